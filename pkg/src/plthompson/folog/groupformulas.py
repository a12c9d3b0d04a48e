"""The formula with parameters a, b defining ``<a, b>`` inside a group, and
its bounded check on group elements.

``x = y^s z^t & y a = a y & forall w (w a = a w -> z w^-s b w^s = w^-s b w^s z)``

Here ``y`` ranges over the centralizer ``<c>`` of ``a = c^s`` and ``z`` over
the group generated by the conjugates ``a^-k d a^k`` with ``b = d^t``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from ..constructions import Generators
from ..plmaps import PLMap, compose, inverse, power
from ..wreath import WreathElement
from .structures import PoolStructure, compile_formula
from .syntax import Formula, parse

GROUP_CONSTANTS = ("e", "a", "b")


def membership_matrix(s: int, t: int) -> Formula:
    """The quantifier-free part and the inner universal, with ``x, y, z`` free."""
    if s < 1 or t < 1:
        raise ValueError("s and t must be positive")
    text = (f"x = y^{s} * z^{t} & y * a = a * y & "
            f"forall w (w * a = a * w -> z * w^-{s} * b * w^{s} = w^-{s} * b * w^{s} * z)")
    return parse(text, GROUP_CONSTANTS)


def membership_formula(s: int, t: int) -> Formula:
    """``exists y, z (...)``: the defining formula of ``<a, b>`` with free ``x``."""
    if s < 1 or t < 1:
        raise ValueError("the root exponents s and t must be positive")
    text = (f"exists y, z (x = y^{s} * z^{t} & y * a = a * y & "
            f"forall w (w * a = a * w -> z * w^-{s} * b * w^{s} = w^-{s} * b * w^{s} * z))")
    return parse(text, GROUP_CONSTANTS)


def group_pool(gens: Generators, pool: Sequence[PLMap]) -> PoolStructure:
    """The group F seen through a finite pool, with ``a`` and ``b`` named."""
    ctx = gens.ctx
    one = PLMap.identity(ctx)
    return PoolStructure(
        tuple(pool),
        functions={"mul": compose, "inv": inverse, "e": lambda: one,
                   "a": lambda: gens.a, "b": lambda: gens.b},
        arities={"mul": 2, "inv": 1, "e": 0, "a": 0, "b": 0},
    )


def centralizer_pool(gens: Generators, size: int = 50) -> list[PLMap]:
    """``c^j`` for ``j`` in a window of ``size`` consecutive integers around 0."""
    lo = -(size // 2)
    return [power(gens.c, j) for j in range(lo, lo + size)]


@dataclass(frozen=True)
class MembershipWitness:
    y: PLMap
    z: PLMap


def witnesses_for(u: WreathElement, gens: Generators) -> MembershipWitness:
    """For ``x = embed(u) = h a^m``: ``y = c^m`` and ``z`` the product of the
    ``d``-conjugates with ``z^t = a^-m h a^m``."""
    z = PLMap.identity(gens.ctx)
    for k, e in u.coeffs:
        z = compose(z, power(gens.d_conj(k + u.shift), e))
    return MembershipWitness(power(gens.c, u.shift), z)


def check_matrix(x: PLMap, witness: MembershipWitness, gens: Generators,
                 pool: Optional[Sequence[PLMap]] = None) -> bool:
    """The matrix of the formula at ``(x, y, z)`` with ``forall w`` read over
    ``pool`` (default: 50 powers of ``c``)."""
    M = group_pool(gens, pool if pool is not None else centralizer_pool(gens))
    test = compile_formula(membership_matrix(gens.s, gens.t), M)
    return test({"x": x, "y": witness.y, "z": witness.z})


def search_witness(x: PLMap, gens: Generators, ys: Iterable[PLMap], zs: Iterable[PLMap],
                   pool: Optional[Sequence[PLMap]] = None) -> Optional[MembershipWitness]:
    """The first ``(y, z)`` from the candidate lists satisfying the matrix."""
    M = group_pool(gens, pool if pool is not None else centralizer_pool(gens))
    test = compile_formula(membership_matrix(gens.s, gens.t), M)
    zs = list(zs)
    for y in ys:
        for z in zs:
            if test({"x": x, "y": y, "z": z}):
                return MembershipWitness(y, z)
    return None
