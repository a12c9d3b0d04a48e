"""Explicit elements: bumps with prescribed end slopes, the wreath generators
``a = c^s`` and ``b = d^t`` with their ladder of points, the standard
Thompson generators, and the squeezing conjugators used for commutators."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .numbers import GroupContext, RationalLike, THOMPSON, as_rational, in_A, is_power_of_n
from .plmaps import PLMap, compose, conjugate, inverse, power


def _check_endpoints(ctx: GroupContext, alpha: Fraction, beta: Fraction) -> None:
    if not (0 <= alpha < beta <= ctx.r):
        raise ValueError(f"need 0 <= alpha < beta <= r, got ]{alpha}; {beta}[")
    for v in (alpha, beta):
        if not in_A(v, ctx):
            raise ValueError(f"endpoint {v} is not in Z[1/{ctx.n}]")


def make_bump(ctx: GroupContext, alpha: RationalLike, beta: RationalLike,
              p: RationalLike, q: RationalLike) -> PLMap:
    """An upward bump with support ``]alpha; beta[``, right slope ``p`` at alpha
    and left slope ``q`` at beta.

    Both ends are cut into pieces of lengths ``s l, q s l, (1-(2+p+q)s) l,
    p s l, s l`` and mapped onto ``p s l, s l, (1-(2+p+q)s) l, s l, q s l``,
    with ``s`` the largest power of n such that ``(2+p+q) s <= 1``.
    """
    alpha, beta, p, q = map(as_rational, (alpha, beta, p, q))
    _check_endpoints(ctx, alpha, beta)
    if not (is_power_of_n(p, ctx) and is_power_of_n(q, ctx)):
        raise ValueError(f"slopes {p}, {q} must be powers of {ctx.n}")
    if not p > 1 > q:
        raise ValueError(f"need p > 1 > q, got p={p}, q={q}")
    s = Fraction(1)
    while (2 + p + q) * s > 1:
        s /= ctx.n
    length = beta - alpha
    mid = (1 - (2 + p + q) * s) * length
    src = [s * length, q * s * length, mid, p * s * length, s * length]
    dst = [p * s * length, s * length, mid, s * length, q * s * length]
    pts = [(Fraction(0), Fraction(0))] if alpha > 0 else []
    u = v = alpha
    pts.append((u, v))
    for a, b in zip(src, dst):
        u, v = u + a, v + b
        pts.append((u, v))
    if beta < ctx.r:
        pts.append((ctx.r, ctx.r))
    return PLMap(ctx, pts, check=False)


def make_down_bump(ctx: GroupContext, alpha: RationalLike, beta: RationalLike,
                   q: RationalLike, p: RationalLike) -> PLMap:
    """A downward bump on ``]alpha; beta[``: right slope ``q < 1`` at alpha and
    left slope ``p > 1`` at beta."""
    q, p = as_rational(q), as_rational(p)
    if not q < 1 < p:
        raise ValueError(f"need q < 1 < p, got q={q}, p={p}")
    return inverse(make_bump(ctx, alpha, beta, 1 / q, 1 / p))


@dataclass
class Generators:
    """A copy of Z wr Z in F: ``a`` has full support, ``b`` is supported on
    ``]alpha_0; alpha_1[``, ``a = c^s`` and ``b = d^t``."""

    ctx: GroupContext
    a: PLMap
    b: PLMap
    c: PLMap
    d: PLMap
    s: int
    t: int
    alpha0: Fraction
    _ladder: dict = field(default_factory=dict, repr=False, compare=False)
    _a_pow: dict = field(default_factory=dict, repr=False, compare=False)
    _b_conj: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        self._ladder[0] = self.alpha0

    def alpha(self, k: int) -> Fraction:
        """The ladder point ``alpha_k = (alpha_0) a^k``."""
        if k not in self._ladder:
            step = 1 if k > 0 else -1
            prev = self.alpha(k - step)
            self._ladder[k] = self.a(prev) if step > 0 else inverse_eval(self.a, prev)
        return self._ladder[k]

    def a_power(self, k: int) -> PLMap:
        if k not in self._a_pow:
            self._a_pow[k] = power(self.a, k)
        return self._a_pow[k]

    def b_conj(self, k: int, e: int = 1) -> PLMap:
        """``(a^-k b a^k)^e``, supported on ``]alpha_k; alpha_{k+1}[``."""
        key = (k, e)
        if key not in self._b_conj:
            if e == 1:
                self._b_conj[key] = conjugate(self.b, self.a_power(k))
            else:
                self._b_conj[key] = power(self.b_conj(k), e)
        return self._b_conj[key]

    def d_conj(self, k: int) -> PLMap:
        return conjugate(self.d, self.a_power(k))

    def ladder_index(self, value: Fraction) -> Optional[int]:
        """The ``k`` with ``alpha_k == value``, or None if value is not on the ladder."""
        if not 0 < value < self.ctx.r:
            return None
        k = 0
        step = 1 if value > self.alpha0 else -1
        while True:
            v = self.alpha(k)
            if v == value:
                return k
            if (step > 0 and v > value) or (step < 0 and v < value):
                return None
            k += step


def inverse_eval(x: PLMap, t: Fraction) -> Fraction:
    return inverse(x)(t)


def make_generators(ctx: GroupContext, alpha0: RationalLike, s: int = 1, t: int = 1,
                    slopes: Optional[tuple[RationalLike, RationalLike]] = None) -> Generators:
    alpha0 = as_rational(alpha0)
    if not (0 < alpha0 < ctx.r and in_A(alpha0, ctx)):
        raise ValueError(f"alpha0 = {alpha0} must lie in ]0; r[ and in Z[1/{ctx.n}]")
    if s < 1 or t < 1:
        raise ValueError("s and t must be positive")
    p, q = slopes if slopes is not None else (ctx.n, Fraction(1, ctx.n))
    c = make_bump(ctx, 0, ctx.r, p, q)
    a = power(c, s)
    alpha1 = a(alpha0)
    d = make_bump(ctx, alpha0, alpha1, p, q)
    b = power(d, t)
    gens = Generators(ctx, a, b, c, d, s, t, alpha0)
    for k in range(-3, 3):
        assert gens.alpha(k) < gens.alpha(k + 1)
    return gens


def thompson_standard() -> tuple[PLMap, PLMap]:
    """The standard generators ``x0``, ``x1`` of Thompson's group F.

    ``x0`` doubles on [0; 1/4] and halves on [1/2; 1]; ``x1`` is the identity
    on [0; 1/2] and a half-size copy of ``x0`` on [1/2; 1].
    """
    h = Fraction(1, 2)
    x0_pts = [(0, 0), (Fraction(1, 4), h), (h, Fraction(3, 4)), (1, 1)]
    x0 = PLMap(THOMPSON, x0_pts)
    x1 = PLMap(THOMPSON, [(0, 0)] + [(h + u / 2, h + v / 2) for u, v in x0.breakpoints])
    return x0, x1


def thompson_generators() -> Generators:
    """``a = x0^2`` and ``b = x1 x0^-1 x1^-1 x0`` with ``alpha_0 = 1/2``."""
    x0, x1 = thompson_standard()
    a = power(x0, 2)
    b = compose(compose(x1, inverse(x0)), compose(inverse(x1), x0))
    return Generators(THOMPSON, a, b, x0, b, 2, 1, Fraction(1, 2))


@dataclass(frozen=True)
class SqueezeMap:
    """Injective PL map of [0; r] that is the identity on ``[lo; hi]`` and
    affine with slope ``p`` on ``[0; lo]`` and ``[hi; r]``."""

    ctx: GroupContext
    lo: Fraction
    hi: Fraction
    p: Fraction

    @property
    def start(self) -> Fraction:
        return self.lo - self.p * self.lo

    @property
    def end(self) -> Fraction:
        return self.hi + self.p * (self.ctx.r - self.hi)

    def __call__(self, t: Fraction) -> Fraction:
        if t < self.lo:
            return self.lo - self.p * (self.lo - t)
        if t > self.hi:
            return self.hi + self.p * (t - self.hi)
        return t

    def preimage(self, u: Fraction) -> Fraction:
        if not self.start <= u <= self.end:
            raise ValueError(f"{u} is outside the image [{self.start}; {self.end}]")
        if u < self.lo:
            return self.lo - (self.lo - u) / self.p
        if u > self.hi:
            return self.hi + (u - self.hi) / self.p
        return u


def largest_squeeze_slope(ctx: GroupContext, alpha1, beta1, alpha2, beta2) -> Fraction:
    """The largest power of n below 1 keeping [0; r] inside [alpha2; beta2]."""
    bound = min((alpha1 - alpha2) / alpha1, (beta2 - beta1) / (ctx.r - beta1))
    p = Fraction(1, ctx.n)
    while p > bound:
        p /= ctx.n
    return p


def squeeze_conjugator(ctx: GroupContext, alpha1: RationalLike, beta1: RationalLike,
                       alpha2: RationalLike, beta2: RationalLike,
                       p: Optional[RationalLike] = None) -> SqueezeMap:
    alpha1, beta1, alpha2, beta2 = map(as_rational, (alpha1, beta1, alpha2, beta2))
    if not 0 < alpha2 < alpha1 < beta1 < beta2 < ctx.r:
        raise ValueError("need 0 < alpha2 < alpha1 < beta1 < beta2 < r")
    for v in (alpha1, beta1, alpha2, beta2):
        if not in_A(v, ctx):
            raise ValueError(f"{v} is not in Z[1/{ctx.n}]")
    if p is None:
        p = largest_squeeze_slope(ctx, alpha1, beta1, alpha2, beta2)
    p = as_rational(p)
    if not (is_power_of_n(p, ctx) and p < 1):
        raise ValueError(f"p = {p} must be a power of {ctx.n} below 1")
    sq = SqueezeMap(ctx, alpha1, beta1, p)
    if sq.start < alpha2 or sq.end > beta2:
        bound = min((alpha1 - alpha2) / alpha1, (beta2 - beta1) / (ctx.r - beta1))
        raise ValueError(f"slope p = {p} too large: containment needs p <= {bound}")
    return sq


def squeeze(x: PLMap, sq: SqueezeMap) -> PLMap:
    """``s^-1 x s`` on the image of ``s``, extended by the identity."""
    if x.ctx != sq.ctx:
        raise ValueError("squeeze map and element over different groups")
    inv = inverse(x)
    cuts = set(x.xs)
    cuts.update((sq.lo, sq.hi, inv(sq.lo), inv(sq.hi)))
    r = x.ctx.r
    pts = [(Fraction(0), Fraction(0))]
    for t in sorted(cuts):
        pts.append((sq(t), sq(x(t))))
    pts.append((r, r))
    return PLMap(x.ctx, pts, check=False)
