"""Command-line front end.

Exit status: 0 on success, 1 when the input is well formed but the operation
is undefined for it (or a check fails), 2 on usage errors.
"""

from __future__ import annotations

import argparse
import random
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import io
from .commutators import decompose_to_two
from .constructions import make_bump, make_down_bump, make_generators
from .folog import (InterpretationData, admissible, evaluate, parse, parse_structure, quotient,
                    reduce, render)
from .folog.structures import EvaluationError
from .folog.syntax import FormulaSyntaxError
from .interp import add_bridge, classify, decode, divides_bridge, divides_witness, encode_nat
from .numbers import GroupContext, format_rational, parse_rational
from .plmaps import compose, inverse, product, slope_left, slope_right, support
from .plot import to_csv, to_svg
from .sampling import GAMMA, SIGMA, random_interpretation, random_sentence, random_structure
from .selftest import CampaignConfig, format_report, run_campaign
from .wreath import embed, w_from_word, wreath_decompose


class DomainError(Exception):
    pass


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _ctx(args) -> GroupContext:
    return GroupContext(args.n, parse_rational(args.r))


def _add_ctx(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", type=int, default=2, help="slope generator (default 2)")
    p.add_argument("--r", default="1", help="interval length (default 1)")


def _gens(args):
    return make_generators(_ctx(args), parse_rational(args.alpha0), args.s, args.t)


def _add_gens(p: argparse.ArgumentParser) -> None:
    _add_ctx(p)
    p.add_argument("--alpha0", default="1/2")
    p.add_argument("--s", type=int, default=1)
    p.add_argument("--t", type=int, default=1)


# map

def cmd_map(args) -> int:
    maps = [io.load_map(f) for f in args.maps]
    op = args.op
    if op == "compose":
        if len(maps) < 2:
            raise DomainError("compose needs at least two maps")
        _emit(io.format_map(product(maps, maps[0].ctx)), args.output)
    elif op == "inverse":
        _one(maps)
        _emit(io.format_map(inverse(maps[0])), args.output)
    elif op == "eval":
        _one(maps)
        print(format_rational(maps[0](parse_rational(args.point))))
    elif op == "support":
        _one(maps)
        print(support(maps[0]) or "empty")
    elif op == "slopes":
        _one(maps)
        x = maps[0]
        cls = classify(x)
        print(f"right slope at 0: {format_rational(slope_right(x, 0))}")
        print(f"left slope at r: {format_rational(slope_left(x, x.ctx.r))}")
        print(f"exponents: {cls.s0} {cls.sr}")
        print(f"classes: {' '.join(cls.labels()) or 'none'}")
    return 0


def _one(maps) -> None:
    if len(maps) != 1:
        raise DomainError("this operation takes exactly one map")


# constructions

def cmd_bump(args) -> int:
    ctx = _ctx(args)
    alpha, beta = parse_rational(args.alpha), parse_rational(args.beta)
    p, q = parse_rational(args.p), parse_rational(args.q)
    x = make_down_bump(ctx, alpha, beta, q, p) if args.down else make_bump(ctx, alpha, beta, p, q)
    _emit(io.format_map(x), args.output)
    return 0


def cmd_generators(args) -> int:
    gens = _gens(args)
    named = {"a": gens.a, "b": gens.b, "c": gens.c, "d": gens.d}
    if args.out_dir:
        out = Path(args.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        for name, x in named.items():
            io.save_map(out / f"{name}.map", x)
        print(f"wrote {', '.join(str(out / (k + '.map')) for k in named)}")
    else:
        for name, x in named.items():
            print(f"# {name}")
            sys.stdout.write(io.format_map(x))
    ladder = " ".join(f"{k}:{format_rational(gens.alpha(k))}" for k in range(-2, 3))
    print(f"# ladder {ladder}")
    return 0


# wreath

def cmd_wreath(args) -> int:
    gens = _gens(args)
    if args.op == "decompose":
        u = wreath_decompose(io.load_map(args.arg), gens)
        if u is None:
            print("not-a-member")
            return 1
        print(u)
    else:
        u = w_from_word(args.arg)
        print(u)
        if args.output:
            io.save_map(args.output, embed(u, gens))
    return 0


# arithmetic

def cmd_arith(args) -> int:
    op = args.op
    if op == "encode":
        if len(args.args) != 1:
            raise DomainError("encode takes one integer")
        gamma = parse_rational(args.gamma) if args.gamma else None
        _emit(io.format_map(encode_nat(_ctx(args), int(args.args[0]), gamma)), args.output)
        return 0
    maps = [io.load_map(f) for f in args.args]
    need = {"decode": 1, "add": 3, "divides": 2}[op]
    if len(maps) != need:
        raise DomainError(f"{op} takes {need} map files")
    if op == "decode":
        print(decode(maps[0]))
        return 0
    if op == "add":
        print("true" if add_bridge(*maps) else "false")
        return 0
    x, y = maps
    answer = divides_bridge(x, y)
    print("true" if answer else "false")
    if args.witness and answer:
        w = divides_witness(x, y)
        print(f"# exponent {w.exponent}; x z = x1 x2 with z:")
        sys.stdout.write(io.format_map(w.z))
        print("# w:")
        sys.stdout.write(io.format_map(w.w))
        print(f"# y w classes: {' '.join(classify(compose(y, w.w)).labels())}")
    return 0


# commutators

def cmd_commutators(args) -> int:
    pairs = io.load_pairs(args.pairs)
    d = decompose_to_two(pairs)
    if args.out_dir:
        out = Path(args.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        io.save_pairs(out / "pairs.txt", d.pairs, prefix="out")
        io.save_map(out / "product.map", d.product)
    for i, (x, y) in enumerate(d.pairs):
        print(f"# pair {i} x")
        sys.stdout.write(io.format_map(x))
        print(f"# pair {i} y")
        sys.stdout.write(io.format_map(y))
    print(f"# certificate: product of the {len(pairs)} input commutators")
    sys.stdout.write(io.format_map(d.product))
    print(f"# rounds {d.steps}")
    return 0


# logic

def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def cmd_logic(args) -> int:
    if args.op == "reduce":
        alpha = parse(_read(args.formula))
        data = InterpretationData.from_json(_read(args.data))
        print(render(reduce(alpha, data, substitute_params=not args.keep_params)))
        return 0
    if args.op == "eval":
        M = parse_structure(_read(args.structure))
        consts = [name for name, arity in M.signature.functions if arity == 0]
        f = parse(_read(args.formula), consts)
        print("true" if evaluate(M, f) else "false")
        return 0
    return _check_interp(args)


def _check_interp(args) -> int:
    rng = random.Random(args.seed)
    sentences = [random_sentence(SIGMA, rng) for _ in range(args.sentences)]
    failures = 0
    for i in range(args.packages):
        N = random_structure(GAMMA, rng, min_size=2)
        data = random_interpretation(N, rng)
        if not admissible(N, data):
            raise DomainError("sampler produced an inadmissible package")
        M = quotient(N, data)
        bad = [s for s in sentences if evaluate(M, s) != evaluate(N, reduce(s, data))]
        failures += len(bad)
        print(f"CHECK package-{i:02d} {'FAIL' if bad else 'PASS'} |N|={N.size} dim={data.dim} "
              f"|M|={M.size} sentences={len(sentences)} mismatches={len(bad)}")
    print(f"SUMMARY instances={args.packages * len(sentences)} mismatches={failures}")
    return 1 if failures else 0


# plot

def cmd_plot(args) -> int:
    maps = [io.load_map(f) for f in args.maps]
    if args.format == "csv":
        if len(maps) != 1:
            raise DomainError("csv output takes one map")
        _emit(to_csv(maps[0]), args.output)
    else:
        _emit(to_svg(maps, size=args.size), args.output)
    return 0


def cmd_selftest(args) -> int:
    config = CampaignConfig(args.seed, args.trials, tuple(args.only) if args.only else None)
    results = run_campaign(config)
    _emit(format_report(results, config), args.output)
    return 0 if all(r.passed for r in results) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="plthompson",
                                     description="Exact computations in groups of PL homeomorphisms.")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    p = sub.add_parser("map", help="operations on map files")
    p.add_argument("op", choices=["compose", "inverse", "eval", "support", "slopes"])
    p.add_argument("maps", nargs="+")
    p.add_argument("--point", help="point for eval (also accepted as the last positional)")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_map)

    p = sub.add_parser("bump", help="bump with prescribed boundary slopes")
    _add_ctx(p)
    p.add_argument("--alpha", required=True)
    p.add_argument("--beta", required=True)
    p.add_argument("--p", default="2")
    p.add_argument("--q", default="1/2")
    p.add_argument("--down", action="store_true", help="emit the inverse bump instead")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_bump)

    p = sub.add_parser("generators", help="a, b and their roots c, d")
    _add_gens(p)
    p.add_argument("--out-dir")
    p.set_defaults(func=cmd_generators)

    p = sub.add_parser("wreath", help="normal forms in Z wr Z")
    p.add_argument("op", choices=["decompose", "eval"])
    p.add_argument("arg", help="map file for decompose, word for eval")
    _add_gens(p)
    p.add_argument("-o", "--output", help="eval: also write the embedded map")
    p.set_defaults(func=cmd_wreath)

    p = sub.add_parser("arith", help="arithmetic read off boundary slopes")
    p.add_argument("op", choices=["encode", "decode", "add", "divides"])
    p.add_argument("args", nargs="+")
    _add_ctx(p)
    p.add_argument("--gamma")
    p.add_argument("--witness", action="store_true")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_arith)

    p = sub.add_parser("commutators", help="rewrite a product of commutators as two")
    p.add_argument("op", choices=["decompose"])
    p.add_argument("pairs", help="file listing 2k map files")
    p.add_argument("--out-dir")
    p.set_defaults(func=cmd_commutators)

    p = sub.add_parser("logic", help="formulas, finite structures, interpretations")
    lsub = p.add_subparsers(dest="op", metavar="OP")
    lsub.required = True
    q = lsub.add_parser("reduce", help="translate a sentence through an interpretation")
    q.add_argument("formula")
    q.add_argument("data", help="interpretation package (JSON)")
    q.add_argument("--keep-params", action="store_true")
    q = lsub.add_parser("eval", help="truth of a sentence in a finite structure")
    q.add_argument("structure")
    q.add_argument("formula")
    q = lsub.add_parser("check-interp", help="randomized soundness check of reduction")
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--sentences", type=int, default=30)
    q.add_argument("--packages", type=int, default=10)
    p.set_defaults(func=cmd_logic)

    p = sub.add_parser("plot", help="CSV or SVG of map graphs")
    p.add_argument("maps", nargs="+")
    p.add_argument("--format", choices=["csv", "svg"], default="svg")
    p.add_argument("--size", type=int, default=400)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_plot)

    p = sub.add_parser("selftest", help="deterministic randomized campaign")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--only", nargs="*", help="check-name prefixes")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    # `map eval FILE POINT`: the trailing rational is the point
    if len(argv) >= 4 and argv[0] == "map" and argv[1] == "eval" and "--point" not in argv:
        argv = argv[:-1] + ["--point", argv[-1]]
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.command == "map" and args.op == "eval" and args.point is None:
        parser.print_usage(sys.stderr)
        print("error: map eval needs a point", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except (DomainError, FormulaSyntaxError, EvaluationError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
