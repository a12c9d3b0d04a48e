"""Exact rationals, the ring Z[1/n] and the slope group <n>.

All real quantities in the package are :class:`fractions.Fraction` values,
which are kept reduced by construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional, Union

RationalLike = Union[Fraction, int, str]


def as_rational(value: RationalLike) -> Fraction:
    """Coerce ``value`` to a Fraction, parsing ``"p/q"`` and ``"p"`` strings."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    if not text:
        raise ValueError("empty rational")
    if "." in text or "e" in text.lower():
        raise ValueError(f"decimal notation is not exact: {text!r}")
    try:
        return Fraction(text)
    except ZeroDivisionError:
        raise ValueError(f"zero denominator in {text!r}") from None


def format_rational(q: Fraction) -> str:
    return str(Fraction(q))


@dataclass(frozen=True)
class GroupContext:
    """Parameters of F(r, <n>, Z[1/n]): slopes are powers of ``n`` and
    breakpoints lie in Z[1/n]; maps act on [0; r)."""

    n: int = 2
    r: Fraction = Fraction(1)

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 2:
            raise ValueError(f"n must be an integer >= 2, got {self.n!r}")
        r = as_rational(self.r)
        object.__setattr__(self, "r", r)
        if r <= 0:
            raise ValueError(f"r must be positive, got {r}")
        if not in_A(r, self):
            raise ValueError(f"r = {r} is not in Z[1/{self.n}]")

    def __str__(self):
        return f"{self.n} {format_rational(self.r)}"


def in_A(q: RationalLike, ctx: GroupContext) -> bool:
    """True iff every prime factor of the reduced denominator divides n."""
    d = as_rational(q).denominator
    g = gcd(d, ctx.n)
    while g > 1:
        while d % g == 0:
            d //= g
        g = gcd(d, ctx.n)
    return d == 1


THOMPSON = GroupContext(2, Fraction(1))


def log_slope(q: RationalLike, ctx: GroupContext) -> Optional[int]:
    """Return ``k`` with ``q == n**k``, or None when q is not a power of n."""
    q = as_rational(q)
    if q <= 0:
        raise ValueError(f"slope must be positive, got {q}")
    n = ctx.n
    if q >= 1:
        num, den, sign = q.numerator, q.denominator, 1
    else:
        num, den, sign = q.denominator, q.numerator, -1
    if den != 1:
        return None
    k = 0
    while num % n == 0:
        num //= n
        k += 1
    return sign * k if num == 1 else None


def is_power_of_n(q: RationalLike, ctx: GroupContext) -> bool:
    q = as_rational(q)
    return q > 0 and log_slope(q, ctx) is not None


def power(ctx: GroupContext, k: int) -> Fraction:
    """n**k as an exact rational (k may be negative)."""
    return Fraction(ctx.n) ** k


def simplest_between(lo: Fraction, hi: Fraction, ctx: GroupContext) -> Fraction:
    """The point of Z[1/n] strictly inside ]lo; hi[ with the smallest
    denominator power; ties go to the point closest to the midpoint."""
    lo, hi = as_rational(lo), as_rational(hi)
    if not lo < hi:
        raise ValueError(f"empty interval ]{lo}; {hi}[")
    mid = (lo + hi) / 2
    e = 0
    while True:
        den = ctx.n ** e
        first = (lo * den).__floor__() + 1
        last = (hi * den).__ceil__() - 1
        if first <= last:
            best = min(range(first, last + 1) if last - first < 64 else
                       _near(mid * den, first, last),
                       key=lambda j: (abs(Fraction(j, den) - mid), j))
            return Fraction(best, den)
        e += 1


def _near(target: Fraction, first: int, last: int):
    c = target.__floor__()
    return [j for j in (c - 1, c, c + 1, c + 2) if first <= j <= last] or [first, last]
