"""Rewriting a product of commutators in F as a product of exactly two
commutators whose entries are the identity near 0 and r.

Convention: ``[x, y] = x^-1 y^-1 x y`` and ``x^g = g^-1 x g``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .constructions import make_bump, squeeze, squeeze_conjugator
from .numbers import GroupContext, in_A, power as n_power, simplest_between
from .plmaps import PLMap, commutator, compose, conjugate, inverse, product, support

Pair = tuple[PLMap, PLMap]


@dataclass(frozen=True)
class CommutatorList:
    ctx: GroupContext
    pairs: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "pairs", tuple((x, y) for x, y in self.pairs))
        for x, y in self.pairs:
            if x.ctx != self.ctx or y.ctx != self.ctx:
                raise ValueError("all entries must lie in the same group")

    def __len__(self):
        return len(self.pairs)

    def value(self) -> PLMap:
        return product((commutator(x, y) for x, y in self.pairs), self.ctx)


def _trivial(ctx: GroupContext) -> Pair:
    one = PLMap.identity(ctx)
    return one, one


def pad_down(u: Fraction, lo: Fraction, ctx: GroupContext) -> Fraction:
    """The point of Z[1/n] in ``]lo; u]`` closest to ``u`` among those with the
    smallest possible denominator power."""
    if in_A(u, ctx):
        return u
    den = 1
    while True:
        v = Fraction((u * den).__floor__(), den)
        if v > lo:
            return v
        den *= ctx.n


def pad_up(v: Fraction, hi: Fraction, ctx: GroupContext) -> Fraction:
    """Mirror image of :func:`pad_down`: a point of Z[1/n] in ``[v; hi[``."""
    if in_A(v, ctx):
        return v
    den = 1
    while True:
        u = Fraction((v * den).__ceil__(), den)
        if u < hi:
            return u
        den *= ctx.n


def support_window(c: PLMap, lo: Optional[Fraction] = None, hi: Optional[Fraction] = None
                   ) -> Optional[tuple[Fraction, Fraction]]:
    """``(alpha, beta)`` in Z[1/n] with ``supp(c)`` inside ``]alpha; beta[``,
    or None for the identity.  The padding stays inside ``]lo; hi[``."""
    s = support(c)
    if not s:
        return None
    u, v = s.hull()
    ctx = c.ctx
    lo = Fraction(0) if lo is None else lo
    hi = ctx.r if hi is None else hi
    if u == 0 or v == ctx.r:
        raise ValueError("support reaches an end of the interval")
    return pad_down(u, lo, ctx), pad_up(v, hi, ctx)


def squeeze_commutator(pair: Pair, target: Optional[tuple[Fraction, Fraction]] = None,
                       window: Optional[tuple[Fraction, Fraction]] = None) -> Pair:
    """``(x', y')`` with ``[x', y'] = [x, y]`` and both entries supported in
    the target interval ``]alpha2; beta2[``.

    ``window = (alpha1, beta1)`` must contain the support of the commutator and
    lie strictly inside the target; both default to padded choices.
    """
    x, y = pair
    ctx = x.ctx
    c = commutator(x, y)
    if c.is_identity():
        return _trivial(ctx)
    if window is None:
        lo = target[0] if target else Fraction(0)
        hi = target[1] if target else ctx.r
        window = support_window(c, lo, hi)
    alpha1, beta1 = window
    if not support(c).within(alpha1, beta1):
        raise ValueError(f"commutator support {support(c)} is not inside ]{alpha1}; {beta1}[")
    if target is None:
        target = (simplest_between(Fraction(0), alpha1, ctx), simplest_between(beta1, ctx.r, ctx))
    alpha2, beta2 = target
    if not 0 < alpha2 < alpha1 < beta1 < beta2 < ctx.r:
        raise ValueError(f"need 0 < {alpha2} < {alpha1} < {beta1} < {beta2} < {ctx.r}")
    sq = squeeze_conjugator(ctx, alpha1, beta1, alpha2, beta2)
    xs, ys = squeeze(x, sq), squeeze(y, sq)
    assert commutator(xs, ys) == c
    return xs, ys


def _entry_hull(pair: Pair) -> Optional[tuple[Fraction, Fraction]]:
    hulls = [support(z).hull() for z in pair if not z.is_identity()]
    if not hulls:
        return None
    return min(h[0] for h in hulls), max(h[1] for h in hulls)


def merge_disjoint(pairs: Sequence[Pair], ctx: Optional[GroupContext] = None) -> Pair:
    """One pair whose commutator is the product of the given commutators, for
    pairs whose entries live in pairwise disjoint closed intervals."""
    if not pairs:
        if ctx is None:
            raise ValueError("an empty list needs a group context")
        return _trivial(ctx)
    ctx = pairs[0][0].ctx
    spans = sorted((h, i) for i, p in enumerate(pairs) if (h := _entry_hull(p)) is not None)
    for (h1, i), (h2, j) in zip(spans, spans[1:]):
        if not h1[1] < h2[0]:
            raise ValueError(f"entries of pairs {i} and {j} overlap: [{h1[0]}; {h1[1]}] and [{h2[0]}; {h2[1]}]")
    X = product((p[0] for p in pairs), ctx)
    Y = product((p[1] for p in pairs), ctx)
    return X, Y


def displacement_bump(ctx: GroupContext, alpha: Fraction, beta: Fraction, max_m: int = 8
                      ) -> tuple[PLMap, str]:
    """An element ``b`` with ``(alpha) b > beta`` and a note on how it was found.

    First tries full-support bumps with end slopes ``(n^m, n^-m)`` for
    ``m = 1 .. max_m``; such a bump is a translation on its middle piece and
    its largest displacement is bounded, so for wide gaps the fallback is the
    least power of the ``m = 1`` bump that does the job (iterates of a full
    bump push every point towards r).
    """
    for m in range(1, max_m + 1):
        b = make_bump(ctx, 0, ctx.r, n_power(ctx, m), n_power(ctx, -m))
        if b(alpha) > beta:
            return b, f"bump with slopes n^{m}, n^-{m}"
    base = make_bump(ctx, 0, ctx.r, ctx.n, Fraction(1, ctx.n))
    b, k = base, 1
    while not b(alpha) > beta:
        b, k = compose(b, base), k + 1
    return b, f"power {k} of the bump with slopes n, n^-1"


@dataclass(frozen=True)
class ThreeToTwo:
    first: Pair
    second: Pair
    b: PLMap
    window: tuple[Fraction, Fraction]
    note: str


def three_to_two(p1: Pair, p2: Pair, p3: Pair) -> ThreeToTwo:
    """Two pairs with ``[first][second] = c1 c2 c3`` where ``ci`` are the
    commutators of the inputs, using
    ``c1 c2 c3 = (c1 c2^b c3^(b^-1)) [c2^-1 c3^(b^-1), b]``."""
    ctx = p1[0].ctx
    cs = [commutator(*p) for p in (p1, p2, p3)]
    target = product(cs, ctx)
    hulls = [support(c).hull() for c in cs if not c.is_identity()]
    if not hulls:
        return ThreeToTwo(_trivial(ctx), _trivial(ctx), PLMap.identity(ctx), (Fraction(0), ctx.r), "trivial")
    u, v = min(h[0] for h in hulls), max(h[1] for h in hulls)
    if u == 0 or v == ctx.r:
        raise ValueError("commutator support reaches an end of the interval")
    alpha, beta = pad_down(u, Fraction(0), ctx), pad_up(v, ctx.r, ctx)
    b, note = displacement_bump(ctx, alpha, beta)
    b_inv = inverse(b)
    assert 0 < b_inv(beta) < alpha < beta < b(alpha) < ctx.r

    # c2^b and c3^(b^-1) as commutators of conjugated entries
    q2 = (conjugate(p2[0], b), conjugate(p2[1], b))
    q3 = (conjugate(p3[0], b_inv), conjugate(p3[1], b_inv))
    # left to right along [0; r]: c3^(b^-1), c1, c2^b
    ordered = [q3, p1, q2]
    windows = [(b_inv(alpha), b_inv(beta)), (alpha, beta), (b(alpha), b(beta))]
    cuts = [Fraction(0)]
    for (_, hi), (lo, _) in zip(windows, windows[1:]):
        cuts.append(simplest_between(hi, lo, ctx))
    cuts.append(ctx.r)
    squeezed = []
    for i, (pair, win) in enumerate(zip(ordered, windows)):
        lo_t, hi_t = cuts[i], cuts[i + 1]
        if lo_t == 0:
            lo_t = simplest_between(Fraction(0), win[0], ctx)
        if hi_t == ctx.r:
            hi_t = simplest_between(win[1], ctx.r, ctx)
        squeezed.append(squeeze_commutator(pair, (lo_t, hi_t), win))
    first = merge_disjoint(squeezed, ctx)
    second = (compose(inverse(cs[1]), conjugate(cs[2], b_inv)), b)
    assert compose(commutator(*first), commutator(*second)) == target
    return ThreeToTwo(first, second, b, (alpha, beta), note)


@dataclass(frozen=True)
class Decomposition:
    pairs: tuple
    product: PLMap
    steps: int
    notes: tuple = ()


def to_F_circle(pair: Pair) -> Pair:
    """The same commutator with entries that are the identity near 0 and r."""
    return squeeze_commutator(pair)


def decompose_to_two(pairs: Iterable[Pair], ctx: Optional[GroupContext] = None) -> Decomposition:
    """Two pairs with entries in F° whose commutators multiply to the product
    of the input commutators.  The list is folded from the right, three
    commutators becoming two in each round; the product is checked exactly
    after every round."""
    pairs = list(pairs)
    if not pairs:
        raise ValueError("need at least one commutator")
    ctx = ctx or pairs[0][0].ctx
    lst = CommutatorList(ctx, pairs)
    target = lst.value()
    work = list(lst.pairs)
    notes = []
    steps = 0
    while len(work) > 2:
        res = three_to_two(*work[-3:])
        work[-3:] = [res.first, res.second]
        notes.append(res.note)
        steps += 1
        assert CommutatorList(ctx, work).value() == target, "product changed"
    while len(work) < 2:
        work.append(_trivial(ctx))
    final = tuple(to_F_circle(p) for p in work)
    assert CommutatorList(ctx, final).value() == target
    return Decomposition(final, target, steps, tuple(notes))
