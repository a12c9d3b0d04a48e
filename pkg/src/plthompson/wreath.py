"""Normal forms in the restricted wreath product Z wr Z = <b> wr <a>, its
embedding into F, membership decomposition, and the integer gadgets used to
interpret arithmetic in it.

An element is ``h a^m`` with ``h = prod_k b_k^{e_k}`` and ``b_k = a^-k b a^k``.
Conjugation re-indexes the base: ``a^m b_k a^-m = b_{k-m}``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from math import isqrt
from typing import Mapping, Optional

from .constructions import Generators
from .numbers import log_slope
from .plmaps import PLMap, compose, slope_right, support


@dataclass(frozen=True)
class WreathElement:
    shift: int = 0
    coeffs: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        items = sorted((int(k), int(e)) for k, e in dict(self.coeffs).items() if e != 0)
        object.__setattr__(self, "coeffs", tuple(items))

    @classmethod
    def make(cls, shift: int = 0, coeffs: Optional[Mapping[int, int]] = None) -> "WreathElement":
        return cls(shift, tuple((coeffs or {}).items()))

    @property
    def base(self) -> dict[int, int]:
        return dict(self.coeffs)

    def is_identity(self) -> bool:
        return self.shift == 0 and not self.coeffs

    def __mul__(self, other: "WreathElement") -> "WreathElement":
        return w_multiply(self, other)

    def __invert__(self) -> "WreathElement":
        return w_inverse(self)

    def __pow__(self, m: int) -> "WreathElement":
        return w_power(self, m)

    def __str__(self):
        body = ", ".join(f"{k}: {e}" for k, e in self.coeffs)
        return f"a^{self.shift} | {{{body}}}"


IDENTITY = WreathElement()
A = WreathElement(1)
B = WreathElement(0, ((0, 1),))


def _shifted(coeffs, m: int) -> dict[int, int]:
    """``a^m h a^-m``: index k becomes k - m."""
    return {k - m: e for k, e in coeffs}


def w_multiply(u: WreathElement, v: WreathElement) -> WreathElement:
    base = dict(u.coeffs)
    for k, e in _shifted(v.coeffs, u.shift).items():
        base[k] = base.get(k, 0) + e
    return WreathElement.make(u.shift + v.shift, base)


def w_inverse(u: WreathElement) -> WreathElement:
    # (h a^m)^-1 = (a^-m h^-1 a^m) a^-m
    return WreathElement.make(-u.shift, {k: -e for k, e in _shifted(u.coeffs, -u.shift).items()})


def w_power(u: WreathElement, m: int) -> WreathElement:
    if m < 0:
        u, m = w_inverse(u), -m
    result = IDENTITY
    for _ in range(m):
        result = w_multiply(result, u)
    return result


def w_commutator(u: WreathElement, v: WreathElement) -> WreathElement:
    return w_multiply(w_multiply(w_inverse(u), w_inverse(v)), w_multiply(u, v))


_TOKEN = re.compile(r"\s*([abAB])(?:\s*\^\s*(-?\d+)|(⁻¹))?\s*[*.]?")


def w_from_word(word: str) -> WreathElement:
    """Evaluate a word such as ``"a^-1 b a"``; capitals denote inverses."""
    result = IDENTITY
    pos = 0
    word = word.strip()
    while pos < len(word):
        m = _TOKEN.match(word, pos)
        if not m or m.end() == pos:
            raise ValueError(f"bad word {word!r} at offset {pos}")
        letter, exp, sup = m.groups()
        e = int(exp) if exp is not None else (-1 if sup else 1)
        if letter.isupper():
            letter, e = letter.lower(), -e
        gen = A if letter == "a" else B
        result = w_multiply(result, w_power(gen, e))
        pos = m.end()
    return result


def embed(u: WreathElement, gens: Generators) -> PLMap:
    """``prod_k (a^-k b a^k)^{e_k} * a^shift`` as an element of F."""
    x = PLMap.identity(gens.ctx)
    for k, e in u.coeffs:
        x = compose(x, gens.b_conj(k, e))
    if u.shift:
        x = compose(x, gens.a_power(u.shift))
    return x


def wreath_decompose(x: PLMap, gens: Generators) -> Optional[WreathElement]:
    """The normal form ``u`` with ``embed(u) == x``, or None when ``x`` is not
    in ``<a, b>``."""
    m = gens.ladder_index(x(gens.alpha0))
    if m is None:
        return None
    h = compose(x, gens.a_power(-m))
    base_slope = log_slope(slope_right(gens.b, gens.alpha0), gens.ctx)
    coeffs = {}
    for u, v in support(h):
        k = gens.ladder_index(u)
        if k is None or gens.alpha(k + 1) != v:
            return None
        e, rem = divmod(log_slope(slope_right(h, u), gens.ctx), base_slope)
        if rem or e == 0:
            return None
        coeffs[k] = e
    result = WreathElement.make(m, coeffs)
    return result if embed(result, gens) == x else None


def in_H_coset_of_centralizer(g: WreathElement, m: int) -> bool:
    """Membership of ``g`` in ``H C(b a^m)`` where ``H`` is the base group.

    For m != 0 the centralizer of ``b a^m`` is cyclic on ``b a^m``, so this asks
    for ``j`` with ``g (b a^m)^-j`` in H.  For m = 0 the product is H itself.
    """
    if m == 0:
        return g.shift == 0
    j, rem = divmod(g.shift, m)
    if rem:
        return False
    gen = w_multiply(B, w_power(A, m))
    return w_multiply(g, w_power(gen, -j)).shift == 0


def centralizer_check_ba_n(g: WreathElement, m: int) -> bool:
    """Whether ``g`` commutes with ``b a^m`` (m != 0)."""
    if m == 0:
        raise ValueError("m must be nonzero")
    gen = w_multiply(B, w_power(A, m))
    return w_multiply(g, gen) == w_multiply(gen, g)


def four_squares(k: int) -> tuple[int, int, int, int]:
    """A representation ``k = w^2 + x^2 + y^2 + z^2`` found by search."""
    if k < 0:
        raise ValueError("k must be non-negative")
    for w in range(isqrt(k), -1, -1):
        r1 = k - w * w
        for x in range(min(w, isqrt(r1)), -1, -1):
            r2 = r1 - x * x
            for y in range(min(x, isqrt(r2)), -1, -1):
                z2 = r2 - y * y
                z = isqrt(z2)
                if z * z == z2 and z <= y:
                    return w, x, y, z
    raise AssertionError(f"no four-square witness for {k}")  # pragma: no cover


# Multiplication from addition, divisibility and the constant 1.

def divides(d: int, m: int) -> bool:
    if d == 0:
        return m == 0
    return m % d == 0


def is_pronic_of(n: int, k: int) -> bool:
    """Decide ``n = k(k+1)`` by
    ``(forall m)(n|m <-> k|m & (k+1)|m) & (2k+1) | (2n-k)``.

    The quantifier runs over ``0 <= m <= 2|n| + 1``.  That range always holds a
    counterexample for a wrong nonzero ``n``: ``m = |n|`` when ``|n| < |k(k+1)|``
    and ``m = |k(k+1)|`` otherwise.  ``n = 0`` is settled by the second clause.
    """
    one = 1
    if not divides(k + k + one, n + n - k):
        return False
    bound = abs(n) + abs(n) + one
    return all(divides(n, m) == (divides(k, m) and divides(k + one, m))
               for m in range(bound + 1))


DEFAULT_RADIUS = 20_000


def _by_magnitude(radius: int):
    yield 0
    for size in range(1, radius + 1):
        yield size
        yield -size


@lru_cache(maxsize=None)
def pronic(k: int, radius: int = DEFAULT_RADIUS) -> int:
    """``k(k+1)``, located by scanning candidates with :func:`is_pronic_of`."""
    for n in _by_magnitude(radius):
        if is_pronic_of(n, k):
            return n
    raise ArithmeticError(f"search radius {radius} exhausted for k = {k}")


def mul_from_add_div(k: int, l: int, radius: int = DEFAULT_RADIUS) -> int:
    """``k * l`` recovered as the unique ``n`` with
    ``(k+l)(k+l+1) = k(k+1) + l(l+1) + 2n``, every pronic number being found
    through divisibility alone."""
    pk, pl, pkl = pronic(k, radius), pronic(l, radius), pronic(k + l, radius)
    for n in _by_magnitude(radius):
        if pkl == pk + pl + n + n:
            return n
    raise ArithmeticError(f"search radius {radius} exhausted for {k} * {l}")
