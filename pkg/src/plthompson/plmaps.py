"""Piecewise-affine maps of [0; r): the group F via breakpoint lists, and
right-continuous bijections (elements of V) with F/T membership tests.

Maps act on the right.  ``x * y`` (equivalently ``compose(x, y)``) first
applies ``x`` and then ``y``, so ``(t)(xy) = ((t)x)y``.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, NamedTuple, Sequence

from .numbers import GroupContext, RationalLike, as_rational, in_A, is_power_of_n


class ContextMismatch(ValueError):
    pass


class PLMap:
    """An element of F(r, <n>, Z[1/n]) stored by its normalized breakpoints.

    ``xs[0] = ys[0] = 0`` and ``xs[-1] = ys[-1] = r``; no interior breakpoint
    joins two pieces of equal slope, so equality is list equality.
    """

    __slots__ = ("ctx", "xs", "ys", "slopes", "_hash")

    def __init__(self, ctx: GroupContext, breakpoints: Iterable[tuple[RationalLike, RationalLike]],
                 *, check: bool = True):
        pts = [(as_rational(x), as_rational(y)) for x, y in breakpoints]
        if check:
            _validate(ctx, pts)
        xs, ys, slopes = _normalize(pts)
        self.ctx = ctx
        self.xs = xs
        self.ys = ys
        self.slopes = slopes
        self._hash = None

    @classmethod
    def identity(cls, ctx: GroupContext) -> "PLMap":
        return cls(ctx, [(0, 0), (ctx.r, ctx.r)], check=False)

    @property
    def breakpoints(self) -> tuple[tuple[Fraction, Fraction], ...]:
        return tuple(zip(self.xs, self.ys))

    def is_identity(self) -> bool:
        return len(self.xs) == 2

    def __call__(self, t: RationalLike) -> Fraction:
        return evaluate(self, t)

    def __mul__(self, other: "PLMap") -> "PLMap":
        return compose(self, other)

    def __invert__(self) -> "PLMap":
        return inverse(self)

    def __pow__(self, m: int) -> "PLMap":
        return power(self, m)

    def __eq__(self, other):
        if not isinstance(other, PLMap):
            return NotImplemented
        return self.ctx == other.ctx and self.xs == other.xs and self.ys == other.ys

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ctx, self.xs, self.ys))
        return self._hash

    def __repr__(self):
        pts = ", ".join(f"({x}, {y})" for x, y in self.breakpoints)
        return f"PLMap(n={self.ctx.n}, r={self.ctx.r}, [{pts}])"


def _validate(ctx: GroupContext, pts: list[tuple[Fraction, Fraction]]) -> None:
    if len(pts) < 2:
        raise ValueError("a PL map needs at least the two endpoints")
    if pts[0] != (0, 0) or pts[-1] != (ctx.r, ctx.r):
        raise ValueError(f"breakpoints must start at (0, 0) and end at ({ctx.r}, {ctx.r})")
    for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
        if not (x0 < x1 and y0 < y1):
            raise ValueError(f"breakpoints not strictly increasing at ({x0}, {y0}) -> ({x1}, {y1})")
        slope = (y1 - y0) / (x1 - x0)
        if not is_power_of_n(slope, ctx):
            raise ValueError(f"slope {slope} on [{x0}; {x1}] is not a power of {ctx.n}")
    for x, y in pts:
        if not (in_A(x, ctx) and in_A(y, ctx)):
            raise ValueError(f"breakpoint ({x}, {y}) is not in Z[1/{ctx.n}]")


def _normalize(pts):
    xs, ys, slopes = [pts[0][0]], [pts[0][1]], []
    for x, y in pts[1:]:
        if x == xs[-1]:
            continue
        s = (y - ys[-1]) / (x - xs[-1])
        if slopes and slopes[-1] == s:
            xs[-1], ys[-1] = x, y
        else:
            xs.append(x)
            ys.append(y)
            slopes.append(s)
    return tuple(xs), tuple(ys), tuple(slopes)


def _check_same(x: PLMap, y: PLMap) -> None:
    if x.ctx != y.ctx:
        raise ContextMismatch(f"maps over different groups: ({x.ctx}) vs ({y.ctx})")


def _eval(xs, ys, slopes, t):
    i = bisect_right(xs, t) - 1
    if i >= len(slopes):
        return ys[-1]
    return ys[i] + slopes[i] * (t - xs[i])


def _eval_inverse(x: PLMap, t):
    i = bisect_right(x.ys, t) - 1
    if i >= len(x.slopes):
        return x.xs[-1]
    return x.xs[i] + (t - x.ys[i]) / x.slopes[i]


# group operations

def identity(ctx: GroupContext) -> PLMap:
    return PLMap.identity(ctx)


def compose(x: PLMap, y: PLMap) -> PLMap:
    """The product ``xy``: apply ``x``, then ``y``."""
    _check_same(x, y)
    # Breakpoints of xy: those of x pushed through y, and those of y pulled
    # back through x.  Both walks are monotone, so one merge suffices.
    xs, ys, xm = x.xs, x.ys, x.slopes
    us, vs, ym = y.xs, y.ys, y.slopes
    nx, ny = len(xs), len(us)
    pts = []
    i = j = 0
    while i < nx or j < ny:
        # compare ys[i] (image of the next x breakpoint) with us[j]
        if j >= ny or (i < nx and ys[i] < us[j]):
            mid = ys[i]
            k = j - 1
            pts.append((xs[i], vs[k] + ym[k] * (mid - us[k])))
            i += 1
        elif i >= nx or us[j] < ys[i]:
            k = i - 1
            pts.append((xs[k] + (us[j] - ys[k]) / xm[k], vs[j]))
            j += 1
        else:
            pts.append((xs[i], vs[j]))
            i += 1
            j += 1
    return PLMap(x.ctx, pts, check=False)


def inverse(x: PLMap) -> PLMap:
    return PLMap(x.ctx, zip(x.ys, x.xs), check=False)


def power(x: PLMap, m: int) -> PLMap:
    if m < 0:
        x, m = inverse(x), -m
    result = PLMap.identity(x.ctx)
    base = x
    while m:
        if m & 1:
            result = compose(result, base)
        m >>= 1
        if m:
            base = compose(base, base)
    return result


def product(maps: Iterable[PLMap], ctx: GroupContext) -> PLMap:
    result = PLMap.identity(ctx)
    for m in maps:
        result = compose(result, m)
    return result


def conjugate(x: PLMap, g: PLMap) -> PLMap:
    """``x^g = g^-1 x g``."""
    return compose(compose(inverse(g), x), g)


def commutator(x: PLMap, y: PLMap) -> PLMap:
    """``[x, y] = x^-1 y^-1 x y``."""
    _check_same(x, y)
    return compose(compose(inverse(x), inverse(y)), compose(x, y))


def commutes(x: PLMap, y: PLMap) -> bool:
    return compose(x, y) == compose(y, x)


# pointwise data

def evaluate(x: PLMap, t: RationalLike) -> Fraction:
    t = as_rational(t)
    if not 0 <= t <= x.ctx.r:
        raise ValueError(f"point {t} outside [0; {x.ctx.r}]")
    return _eval(x.xs, x.ys, x.slopes, t)


def slope_right(x: PLMap, t: RationalLike) -> Fraction:
    """Slope of the affine piece immediately to the right of ``t``."""
    t = as_rational(t)
    if not 0 <= t < x.ctx.r:
        raise ValueError(f"right slope needs 0 <= t < {x.ctx.r}, got {t}")
    return x.slopes[bisect_right(x.xs, t) - 1]


def slope_left(x: PLMap, t: RationalLike) -> Fraction:
    """Slope of the affine piece immediately to the left of ``t``."""
    t = as_rational(t)
    if not 0 < t <= x.ctx.r:
        raise ValueError(f"left slope needs 0 < t <= {x.ctx.r}, got {t}")
    return x.slopes[bisect_left(x.xs, t) - 1]


def is_increasing_everywhere(x: PLMap) -> bool:
    """Membership in the semigroup F-up: ``(t)x >= t`` for all t."""
    return all(y >= t for t, y in zip(x.xs, x.ys))


def is_decreasing_everywhere(x: PLMap) -> bool:
    return all(y <= t for t, y in zip(x.xs, x.ys))


# supports

@dataclass(frozen=True)
class IntervalSet:
    """Disjoint open intervals ``]u; v[`` in increasing order."""

    intervals: tuple[tuple[Fraction, Fraction], ...] = ()

    def __post_init__(self):
        prev = None
        for u, v in self.intervals:
            if not u < v:
                raise ValueError(f"empty interval ]{u}; {v}[")
            if prev is not None and prev > u:
                raise ValueError("intervals overlap or are out of order")
            prev = v

    def __iter__(self) -> Iterator[tuple[Fraction, Fraction]]:
        return iter(self.intervals)

    def __len__(self):
        return len(self.intervals)

    def __bool__(self):
        return bool(self.intervals)

    def __contains__(self, t) -> bool:
        return any(u < t < v for u, v in self.intervals)

    def hull(self) -> tuple[Fraction, Fraction]:
        if not self.intervals:
            raise ValueError("empty set has no hull")
        return self.intervals[0][0], self.intervals[-1][1]

    def image(self, g: PLMap) -> "IntervalSet":
        return IntervalSet(tuple((g(u), g(v)) for u, v in self.intervals))

    def within(self, lo: Fraction, hi: Fraction) -> bool:
        """True iff every interval lies inside ``]lo; hi[``."""
        return all(lo <= u and v <= hi for u, v in self.intervals)

    def __str__(self):
        if not self.intervals:
            return "{}"
        return " u ".join(f"]{u};{v}[" for u, v in self.intervals)


def fix_set(x: PLMap) -> tuple[tuple[Fraction, Fraction], ...]:
    """Fixed points of ``x`` on [0; r] as closed intervals ``[a; b]`` (a <= b),
    merged and in increasing order."""
    parts: list[tuple[Fraction, Fraction]] = []
    for i, m in enumerate(x.slopes):
        x0, x1, y0 = x.xs[i], x.xs[i + 1], x.ys[i]
        if m == 1:
            if y0 == x0:
                parts.append((x0, x1))
            continue
        # the affine piece y0 + m (t - x0) meets the diagonal once
        t = (y0 - m * x0) / (1 - m)
        if x0 <= t <= x1:
            parts.append((t, t))
    merged: list[tuple[Fraction, Fraction]] = []
    for a, b in parts:
        if merged and a <= merged[-1][1]:
            merged[-1] = (merged[-1][0], max(b, merged[-1][1]))
        else:
            merged.append((a, b))
    return tuple(merged)


def support(x: PLMap) -> IntervalSet:
    fixed = fix_set(x)
    gaps = []
    for (_, b), (c, _) in zip(fixed, fixed[1:]):
        if b < c:
            gaps.append((b, c))
    return IntervalSet(tuple(gaps))


def limit_of_iterates(x: PLMap, t: RationalLike) -> Fraction:
    """The limit of ``(t) x^k`` as k -> +infinity."""
    t = as_rational(t)
    y = evaluate(x, t)
    if y == t:
        return t
    for u, v in support(x):
        if u < t < v:
            return v if y > t else u
    raise AssertionError("moved point outside the support")  # pragma: no cover


def rescale(x: PLMap, r_new: RationalLike) -> PLMap:
    """Conjugate ``x`` by ``t -> t * r_new / r``, giving a map over [0; r_new)."""
    r_new = as_rational(r_new)
    if r_new <= 0:
        raise ValueError(f"target length must be positive, got {r_new}")
    if not in_A(r_new, x.ctx):
        raise ValueError(f"r' = {r_new} is not in Z[1/{x.ctx.n}]")
    ctx = GroupContext(x.ctx.n, r_new)
    c = r_new / x.ctx.r
    pts = [(u * c, v * c) for u, v in zip(x.xs, x.ys)]
    for u, v in pts:
        if not (in_A(u, ctx) and in_A(v, ctx)):
            raise ValueError(f"rescaled breakpoint ({u}, {v}) leaves Z[1/{ctx.n}]")
    return PLMap(ctx, pts, check=False)


def restrict(x: PLMap, lo: Fraction, hi: Fraction) -> PLMap:
    """The map equal to ``x`` on [lo; hi] and the identity elsewhere.
    ``lo`` and ``hi`` must be fixed by ``x``."""
    if x(lo) != lo or x(hi) != hi:
        raise ValueError("restriction endpoints must be fixed points")
    pts = [(Fraction(0), Fraction(0)), (lo, lo)]
    pts += [(u, v) for u, v in zip(x.xs, x.ys) if lo < u < hi]
    pts += [(hi, hi), (x.ctx.r, x.ctx.r)]
    return PLMap(x.ctx, pts, check=False)


# right-continuous bijections

class Piece(NamedTuple):
    """``t -> slope * t + offset`` on ``[a; b)``."""

    a: Fraction
    b: Fraction
    slope: Fraction
    offset: Fraction

    def at(self, t):
        return self.slope * t + self.offset

    @property
    def image(self) -> tuple[Fraction, Fraction]:
        return self.at(self.a), self.at(self.b)


class PLBijection:
    """A piecewise-affine right-continuous bijection of [0; r) (an element of V)."""

    __slots__ = ("ctx", "pieces")

    def __init__(self, ctx: GroupContext, pieces: Sequence[Piece], *, check: bool = True):
        pieces = [Piece(*map(as_rational, p)) for p in pieces]
        if check:
            _validate_bijection(ctx, pieces)
        merged: list[Piece] = []
        for p in pieces:
            if merged and merged[-1].slope == p.slope and merged[-1].offset == p.offset:
                merged[-1] = merged[-1]._replace(b=p.b)
            else:
                merged.append(p)
        self.ctx = ctx
        self.pieces = tuple(merged)

    @classmethod
    def from_intervals(cls, ctx: GroupContext, domain: Sequence[tuple], images: Sequence[tuple]):
        """Map each half-open domain interval affinely onto the matching image."""
        pieces = []
        for (a, b), (c, d) in zip(domain, images):
            a, b, c, d = map(as_rational, (a, b, c, d))
            m = (d - c) / (b - a)
            pieces.append(Piece(a, b, m, c - m * a))
        order = sorted(range(len(pieces)), key=lambda i: pieces[i].a)
        return cls(ctx, [pieces[i] for i in order])

    def __call__(self, t: RationalLike) -> Fraction:
        t = as_rational(t)
        if not 0 <= t < self.ctx.r:
            raise ValueError(f"point {t} outside [0; {self.ctx.r})")
        return self._piece_at(t).at(t)

    def _piece_at(self, t) -> Piece:
        starts = [p.a for p in self.pieces]
        return self.pieces[bisect_right(starts, t) - 1]

    def _preimage(self, v) -> Fraction:
        for p in self.pieces:
            c, d = p.image
            if c <= v < d:
                return (v - p.offset) / p.slope
        raise ValueError(f"{v} has no preimage")

    def __mul__(self, other: "PLBijection") -> "PLBijection":
        return compose_bijections(self, other)

    def __eq__(self, other):
        if not isinstance(other, PLBijection):
            return NotImplemented
        return self.ctx == other.ctx and self.pieces == other.pieces

    def __hash__(self):
        return hash((self.ctx, self.pieces))

    def __repr__(self):
        body = ", ".join(f"[{p.a};{p.b})->[{p.image[0]};{p.image[1]})" for p in self.pieces)
        return f"PLBijection({body})"


def _validate_bijection(ctx: GroupContext, pieces: list[Piece]) -> None:
    if not pieces or pieces[0].a != 0 or pieces[-1].b != ctx.r:
        raise ValueError("domains must cover [0; r)")
    for p, q in zip(pieces, pieces[1:]):
        if p.b != q.a:
            raise ValueError(f"domains do not tile [0; r) at {p.b}")
    images = []
    for p in pieces:
        if not p.a < p.b:
            raise ValueError("empty piece")
        if not is_power_of_n(p.slope, ctx):
            raise ValueError(f"slope {p.slope} is not a power of {ctx.n}")
        c, d = p.image
        for v in (p.a, p.b, c, d):
            if not in_A(v, ctx):
                raise ValueError(f"{v} is not in Z[1/{ctx.n}]")
        images.append((c, d))
    images.sort()
    if images[0][0] != 0 or images[-1][1] != ctx.r or any(
            u[1] != w[0] for u, w in zip(images, images[1:])):
        raise ValueError("images do not tile [0; r)")


def to_bijection(x: PLMap) -> PLBijection:
    pieces = [Piece(x.xs[i], x.xs[i + 1], m, x.ys[i] - m * x.xs[i]) for i, m in enumerate(x.slopes)]
    return PLBijection(x.ctx, pieces, check=False)


def compose_bijections(v: PLBijection, w: PLBijection) -> PLBijection:
    """``vw``: apply ``v``, then ``w``."""
    if v.ctx != w.ctx:
        raise ContextMismatch("bijections over different groups")
    cuts = {p.a for p in v.pieces}
    cuts.update(v._preimage(q.a) for q in w.pieces)
    cuts = sorted(cuts) + [v.ctx.r]
    pieces = []
    for a, b in zip(cuts, cuts[1:]):
        p = v._piece_at(a)
        q = w._piece_at(p.at(a))
        pieces.append(Piece(a, b, p.slope * q.slope, q.slope * p.offset + q.offset))
    return PLBijection(v.ctx, pieces, check=False)


def invert_bijection(v: PLBijection) -> PLBijection:
    pieces = []
    for p in v.pieces:
        c, d = p.image
        pieces.append(Piece(c, d, 1 / p.slope, -p.offset / p.slope))
    pieces.sort(key=lambda p: p.a)
    return PLBijection(v.ctx, pieces, check=False)


def discontinuities(v: PLBijection) -> list[Fraction]:
    """Interior points where the left limit differs from the value."""
    return [p.b for p, q in zip(v.pieces, v.pieces[1:]) if p.at(p.b) != q.at(q.a)]


def is_continuous(v: PLBijection) -> bool:
    """Continuity for the usual topology of [0; r), i.e. membership in F."""
    return not discontinuities(v)


def is_circle_continuous(v: PLBijection) -> bool:
    """Continuity for the circle topology [0; r]/{0, r}, i.e. membership in T."""
    r = v.ctx.r
    ends = list(zip(v.pieces, v.pieces[1:])) + [(v.pieces[-1], v.pieces[0])]
    for p, q in ends:
        left, value = p.at(p.b), q.at(q.a)
        if (left - value) % r != 0:
            return False
    return True


def bijection_to_plmap(v: PLBijection) -> PLMap:
    if not is_continuous(v):
        raise ValueError("discontinuous bijection is not in F")
    pts = [(p.a, p.at(p.a)) for p in v.pieces] + [(v.ctx.r, v.ctx.r)]
    return PLMap(v.ctx, pts)
