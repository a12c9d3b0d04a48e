"""Print the ladder alpha_k and the supports of a^-k b a^k for the standard
generators of Thompson's group F, checked against the closed form."""

import argparse
from fractions import Fraction

from plthompson.constructions import thompson_generators, thompson_standard
from plthompson.numbers import format_rational
from plthompson.plmaps import support


def closed_form(k: int) -> Fraction:
    return Fraction(2) ** (-1 + 2 * k) if k < 0 else 1 - Fraction(2) ** (-1 - 2 * k)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--radius", type=int, default=5)
    args = parser.parse_args()
    x0, x1 = thompson_standard()
    gens = thompson_generators()
    print(f"supp(x0) = {support(x0)}   supp(x1) = {support(x1)}")
    ok = True
    for k in range(-args.radius, args.radius + 1):
        s = support(gens.b_conj(k))
        match = gens.alpha(k) == closed_form(k) and list(s) == [(closed_form(k), closed_form(k + 1))]
        ok &= match
        print(f"k={k:+d}  alpha_k={format_rational(gens.alpha(k)):>10}  supp(a^-k b a^k)={s}  "
              f"{'ok' if match else 'MISMATCH'}")
    return 0 if ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
