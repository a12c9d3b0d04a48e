"""Write SVG and CSV pictures of the objects the package builds: the
generators a, b, a bump with prescribed slopes, an encoded natural number and
a squeezed commutator pair."""

import argparse
from fractions import Fraction
from pathlib import Path

from plthompson.commutators import squeeze_commutator
from plthompson.constructions import make_bump, thompson_generators
from plthompson.interp import encode_nat
from plthompson.io import save_map
from plthompson.numbers import THOMPSON
from plthompson.plot import to_csv, to_svg


def figures():
    gens = thompson_generators()
    x = make_bump(THOMPSON, Fraction(1, 4), Fraction(1, 2), 2, Fraction(1, 2))
    y = make_bump(THOMPSON, Fraction(3, 8), Fraction(5, 8), 2, Fraction(1, 2))
    xs, ys = squeeze_commutator((x, y), (Fraction(1, 8), Fraction(3, 4)))
    return {
        "generators": {"a": gens.a, "b": gens.b},
        "bump": {"bump": make_bump(THOMPSON, Fraction(1, 8), Fraction(7, 8), 4, Fraction(1, 8))},
        "encoded": {f"e{k}": encode_nat(THOMPSON, k) for k in (1, 2, 3)},
        "squeezed": {"x": x, "y": y, "x_squeezed": xs, "y_squeezed": ys},
    }


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out-dir", default="figures")
    parser.add_argument("--size", type=int, default=400)
    args = parser.parse_args()
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    for name, maps in figures().items():
        (out / f"{name}.svg").write_text(to_svg(list(maps.values()), size=args.size), encoding="utf-8")
        for label, x in maps.items():
            (out / f"{name}_{label}.csv").write_text(to_csv(x), encoding="utf-8")
            save_map(out / f"{name}_{label}.map", x)
        print(f"{out / (name + '.svg')}: {', '.join(maps)}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
