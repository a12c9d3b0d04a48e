"""Arithmetic read off boundary slopes.

Every element ``x`` of F has two boundary exponents, ``s0 = log_n (0)x'+`` and
``sr = log_n (r)x'-``.  The subsets used to interpret (N, +, |) in F are all
functions of that pair, and ``x -> s0`` restricted to ``B = {s0 = sr > 0}`` is
a surjection onto the positive integers that turns products into sums.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product as cartesian
from typing import Optional

from .constructions import make_bump, make_down_bump
from .numbers import GroupContext, RationalLike, as_rational, in_A, log_slope, power, simplest_between
from .plmaps import PLMap, commutes, compose, inverse, power as map_power, slope_left, slope_right


@dataclass(frozen=True)
class SlopeClass:
    s0: int
    sr: int

    @property
    def in_F_circle(self) -> bool:
        return self.s0 == 0 and self.sr == 0

    @property
    def in_E(self) -> bool:
        return not self.in_F_circle

    @property
    def in_E2(self) -> bool:
        return self.s0 != 0 and self.sr != 0

    @property
    def in_P_plus(self) -> bool:
        return self.s0 > 0 and self.sr > 0

    @property
    def in_P_minus(self) -> bool:
        return self.s0 < 0 and self.sr < 0

    @property
    def in_P(self) -> bool:
        return self.in_P_plus or self.in_P_minus

    @property
    def in_U(self) -> bool:
        return self.s0 == -self.sr and self.s0 in (1, -1)

    @property
    def in_B(self) -> bool:
        return self.s0 == self.sr > 0

    def labels(self) -> list[str]:
        names = ("F_circle", "E", "E2", "P_plus", "P_minus", "U", "B")
        return [name for name in names if getattr(self, "in_" + name)]


def boundary_exponents(x: PLMap) -> tuple[int, int]:
    s0 = log_slope(slope_right(x, 0), x.ctx)
    sr = log_slope(slope_left(x, x.ctx.r), x.ctx)
    assert s0 is not None and sr is not None
    return s0, sr


def classify(x: PLMap) -> SlopeClass:
    return SlopeClass(*boundary_exponents(x))


def default_gamma(ctx: GroupContext) -> Fraction:
    """``r/2`` when it lies in Z[1/n], else the simplest point of Z[1/n]
    closest to it."""
    half = ctx.r / 2
    if in_A(half, ctx):
        return half
    return simplest_between(Fraction(0), ctx.r, ctx)


def _gamma(ctx: GroupContext, gamma: Optional[RationalLike]) -> Fraction:
    if gamma is None:
        return default_gamma(ctx)
    gamma = as_rational(gamma)
    if not (0 < gamma < ctx.r and in_A(gamma, ctx)):
        raise ValueError(f"split point {gamma} must lie in ]0; r[ and in Z[1/{ctx.n}]")
    return gamma


def left_piece(ctx: GroupContext, gamma: Fraction, s0: int, inner: int) -> PLMap:
    """A bump on ``]0; gamma[`` with right slope ``n^s0`` at 0 and left slope
    ``n^inner`` at gamma (the two exponents have opposite signs)."""
    if s0 > 0 > inner:
        return make_bump(ctx, 0, gamma, power(ctx, s0), power(ctx, inner))
    if s0 < 0 < inner:
        return make_down_bump(ctx, 0, gamma, power(ctx, s0), power(ctx, inner))
    raise ValueError(f"exponents {s0}, {inner} must be nonzero with opposite signs")


def right_piece(ctx: GroupContext, gamma: Fraction, inner: int, sr: int) -> PLMap:
    """A bump on ``]gamma; r[`` with right slope ``n^inner`` at gamma and left
    slope ``n^sr`` at r."""
    if inner > 0 > sr:
        return make_bump(ctx, gamma, ctx.r, power(ctx, inner), power(ctx, sr))
    if inner < 0 < sr:
        return make_down_bump(ctx, gamma, ctx.r, power(ctx, inner), power(ctx, sr))
    raise ValueError(f"exponents {inner}, {sr} must be nonzero with opposite signs")


def split_pieces(x: PLMap, gamma: Optional[RationalLike] = None) -> tuple[PLMap, PLMap, PLMap]:
    """``(x1, x2, z)`` with ``supp(x1) = ]0; gamma[``, ``supp(x2) = ]gamma; r[``,
    ``z`` in F° and ``x z = x1 x2``.  Requires ``x`` in E2.

    The inner slopes at gamma are ``n^-1`` for x1 and ``n`` for x2 when the
    corresponding boundary slope exceeds 1, and the reverse otherwise.
    """
    ctx = x.ctx
    g = _gamma(ctx, gamma)
    s0, sr = boundary_exponents(x)
    if s0 == 0 or sr == 0:
        raise ValueError("both boundary slopes must differ from 1")
    x1 = left_piece(ctx, g, s0, -1 if s0 > 0 else 1)
    x2 = right_piece(ctx, g, 1 if sr < 0 else -1, sr)
    z = compose(inverse(x), compose(x1, x2))
    assert classify(z).in_F_circle
    return x1, x2, z


def encode_nat(ctx: GroupContext, k: int, gamma: Optional[RationalLike] = None) -> PLMap:
    """An element of B with both boundary slopes ``n^k``."""
    if k < 1:
        raise ValueError(f"only positive integers are encoded, got {k}")
    g = _gamma(ctx, gamma)
    x1 = left_piece(ctx, g, k, -1)
    x2 = right_piece(ctx, g, -1, k)
    return compose(x1, x2)


def decode(x: PLMap) -> int:
    cls = classify(x)
    if not cls.in_B:
        raise ValueError(f"boundary exponents ({cls.s0}, {cls.sr}) do not describe an element of B")
    return cls.s0


def _require_B(*xs: PLMap) -> None:
    for x in xs:
        if not classify(x).in_B:
            raise ValueError("argument is not in B")


def add_bridge(x: PLMap, y: PLMap, z: PLMap) -> bool:
    """``decode(x) + decode(y) == decode(z)`` decided as ``x y z^-1`` in F°."""
    _require_B(x, y, z)
    return classify(compose(compose(x, y), inverse(z))).in_F_circle


def divides_bridge(x: PLMap, y: PLMap) -> bool:
    _require_B(x, y)
    return decode(y) % decode(x) == 0


@dataclass(frozen=True)
class DivisionWitness:
    """``x z = x1 x2`` with ``z`` in F°, and ``w = x1^e x2^e`` commuting with
    ``x z`` such that ``y w`` lies in F°."""

    z: PLMap
    x1: PLMap
    x2: PLMap
    w: PLMap
    exponent: int


def divides_witness(x: PLMap, y: PLMap, gamma: Optional[RationalLike] = None) -> Optional[DivisionWitness]:
    """The witness for ``decode(x) | decode(y)``, verified exactly; None when
    the division fails."""
    _require_B(x, y)
    k, m = decode(x), decode(y)
    if m % k:
        return None
    x1, x2, z = split_pieces(x, gamma)
    e = -(m // k)
    w = compose(map_power(x1, e), map_power(x2, e))
    assert commutes(w, compose(x, z))
    assert classify(compose(y, w)).in_F_circle
    return DivisionWitness(z, x1, x2, w, e)


def no_lattice_witness(x: PLMap, y: PLMap, radius: int, gamma: Optional[RationalLike] = None) -> bool:
    """True when no ``w = x1^i x2^j`` with ``|i|, |j| <= radius`` puts ``y w``
    in F°, where ``x z = x1 x2`` is the split of :func:`split_pieces`."""
    _require_B(x, y)
    x1, x2, _ = split_pieces(x, gamma)
    pows1 = {i: map_power(x1, i) for i in range(-radius, radius + 1)}
    pows2 = {j: map_power(x2, j) for j in range(-radius, radius + 1)}
    return not any(classify(compose(y, compose(pows1[i], pows2[j]))).in_F_circle
                   for i in pows1 for j in pows2)


@dataclass(frozen=True)
class UCertificate:
    y: PLMap
    z: PLMap
    x1: PLMap
    x2: PLMap
    radius: int
    pairs_checked: int


def u_counterexample(x: PLMap, radius: int = 6, gamma: Optional[RationalLike] = None) -> UCertificate:
    """For ``x`` in E2 but outside P and U: an element ``y`` of P and ``z`` in F°
    such that no ``w1, w2`` in ``<x1> x <x2> = C(xz)`` (exponents bounded by
    ``radius``) satisfy ``w1 w2^-1 in E2`` with ``y w1, y w2`` both outside E2.

    The ``y w`` are computed as maps; ``w1 w2^-1`` is classified through the
    boundary-slope homomorphism, which is checked against real products on the
    diagonal of the lattice.
    """
    cls = classify(x)
    if not cls.in_E2 or cls.in_P or cls.in_U:
        raise ValueError(f"need x in E2 outside P and U, got exponents ({cls.s0}, {cls.sr})")
    ctx = x.ctx
    y = encode_nat(ctx, 1, gamma)
    x1, x2, z = split_pieces(x, gamma)
    xz = compose(x, z)
    exps = range(-radius, radius + 1)
    pows1 = {i: map_power(x1, i) for i in exps}
    pows2 = {j: map_power(x2, j) for j in exps}
    lattice = {}
    for i, j in cartesian(exps, exps):
        w = compose(pows1[i], pows2[j])
        assert commutes(w, xz)
        lattice[i, j] = (classify(w), classify(compose(y, w)))
    for (i, j), (wc, _) in lattice.items():
        if i == j:
            assert wc == SlopeClass(i * cls.s0, j * cls.sr)
    outside = [key for key, (_, ywc) in lattice.items() if not ywc.in_E2]
    checked = 0
    for (i1, j1), (i2, j2) in cartesian(outside, outside):
        quotient = SlopeClass((i1 - i2) * cls.s0, (j1 - j2) * cls.sr)
        if quotient.in_E2:
            raise AssertionError(f"lattice pair ({i1},{j1}), ({i2},{j2}) violates the certificate")
        checked += 1
    return UCertificate(y, z, x1, x2, radius, checked)
