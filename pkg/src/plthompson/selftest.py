"""Deterministic randomized campaign over the whole package.

Each check draws from its own generator seeded by ``"<seed>:<name>"`` so the
report does not depend on which checks run or in what order.  The report has
one line per check, ``CHECK <name> PASS|FAIL <detail>``, sorted by name.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from .commutators import decompose_to_two
from .constructions import make_bump, make_generators, thompson_generators, thompson_standard
from .folog import (admissible, evaluate, parse, quotient, reduce, relationalize_sentence,
                    relationalize_structure, render)
from .folog.structures import Signature
from .interp import add_bridge, classify, divides_bridge, divides_witness, encode_nat
from .numbers import THOMPSON, GroupContext, in_A, log_slope, power as n_power
from .plmaps import (PLBijection, PLMap, commutes, compose, compose_bijections, conjugate,
                     discontinuities, fix_set, inverse, invert_bijection, is_increasing_everywhere, power, slope_left,
                     slope_right, support, to_bijection)
from .sampling import (GAMMA, SIGMA, random_commutator_pairs, random_F, random_full_bump,
                       random_interpretation, random_sentence, random_structure, random_V,
                       random_wreath)
from .wreath import (WreathElement, embed, four_squares, in_H_coset_of_centralizer, mul_from_add_div,
                     w_multiply, wreath_decompose)


@dataclass(frozen=True)
class CampaignConfig:
    seed: int = 0
    trials: int = 200
    only: Optional[tuple[str, ...]] = None


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"CHECK {self.name} {'PASS' if self.passed else 'FAIL'} {self.detail}"


Check = Callable[[random.Random, int], tuple[bool, str]]
CHECKS: dict[str, Check] = {}


def check(name: str):
    def register(fn: Check) -> Check:
        CHECKS[name] = fn
        return fn
    return register


def _rng(seed: int, name: str) -> random.Random:
    return random.Random(f"{seed}:{name}")


# numbers

@check("numbers.log_slope")
def _log_slope(rng, trials):
    ctxs = [GroupContext(n) for n in (2, 3, 6, 10)]
    bad = [(c.n, k) for c in ctxs for k in range(-64, 65) if log_slope(n_power(c, k), c) != k]
    return not bad, f"bad={bad[:3]}" if bad else f"round trips={len(ctxs) * 129}"


@check("numbers.ring")
def _ring(rng, trials):
    ctx = GroupContext(rng.choice([2, 3, 6]))
    for _ in range(trials):
        u = Fraction(rng.randint(-99, 99), ctx.n ** rng.randint(0, 6))
        v = Fraction(rng.randint(-99, 99), ctx.n ** rng.randint(0, 6))
        for w in (u + v, u - v, u * v, u * ctx.n, u / ctx.n):
            if not in_A(w, ctx):
                return False, f"n={ctx.n} u={u} v={v}"
    return True, f"n={ctx.n} samples={trials}"


# maps

@check("plmaps.group_axioms")
def _group_axioms(rng, trials):
    one = PLMap.identity(THOMPSON)
    for _ in range(trials):
        x, y, z = (random_F(THOMPSON, rng) for _ in range(3))
        if compose(compose(x, y), z) != compose(x, compose(y, z)):
            return False, "associativity"
        if compose(x, inverse(x)) != one or compose(inverse(x), x) != one or compose(one, x) != x:
            return False, "inverse or identity"
    return True, f"triples={trials}"


@check("plmaps.chain_rule")
def _chain_rule(rng, trials):
    points = 0
    for _ in range(trials):
        f, g = random_F(THOMPSON, rng), random_F(THOMPSON, rng)
        fg = compose(f, g)
        for t in sorted(set(fg.xs[:-1]) | set(f.xs[:-1])):
            points += 1
            if slope_right(fg, t) != slope_right(f, t) * slope_right(g, f(t)):
                return False, f"at {t}"
    return True, f"pairs={trials} points={points}"


@check("plmaps.conjugate_support")
def _conjugate_support(rng, trials):
    for _ in range(trials):
        f, g = random_F(THOMPSON, rng), random_F(THOMPSON, rng)
        h = conjugate(f, g)
        if support(h) != support(f).image(g):
            return False, "support"
        if fix_set(h) != tuple((g(u), g(v)) for u, v in fix_set(f)):
            return False, "fix"
    return True, f"pairs={trials}"


@check("plmaps.power_support")
def _power_support(rng, trials):
    for _ in range(trials):
        f = random_F(THOMPSON, rng)
        for m in (-3, -2, -1, 1, 2, 3):
            if support(power(f, m)) != support(f):
                return False, f"m={m}"
    return True, f"maps={trials}"


@check("plmaps.commuting_support")
def _commuting_support(rng, trials):
    hits = 0
    for _ in range(trials):
        f = random_F(THOMPSON, rng)
        g = power(f, rng.choice([-2, -1, 2, 3])) if rng.random() < 0.5 else random_F(THOMPSON, rng)
        if not commutes(f, g):
            continue
        hits += 1
        pieces = set(support(f))
        if {(g(u), g(v)) for u, v in pieces} != pieces:
            return False, "g does not permute the support components of f"
    return True, f"commuting pairs={hits}"


# constructions

@check("constructions.bump_grid")
def _bump_grid(rng, trials):
    ctx = THOMPSON
    windows = [(0, 1), (Fraction(1, 4), Fraction(1, 2)), (Fraction(1, 8), Fraction(7, 8)),
               (0, Fraction(3, 16)), (Fraction(5, 8), 1)]
    count = 0
    for p in (2, 4, 8):
        for q in (Fraction(1, 2), Fraction(1, 4), Fraction(1, 8)):
            for a, b in windows:
                x = make_bump(ctx, a, b, p, q)
                count += 1
                if (list(support(x)) != [(a, b)] or slope_right(x, a) != p
                        or slope_left(x, b) != q or not is_increasing_everywhere(x)):
                    return False, f"p={p} q={q} window=({a},{b})"
    return True, f"bumps={count}"


@check("constructions.thompson_anchor")
def _anchor(rng, trials):
    x0, _ = thompson_standard()
    if list(support(x0)) != [(0, 1)]:
        return False, "supp(x0)"
    gens = thompson_generators()

    def expected(k):
        return Fraction(2) ** (-1 + 2 * k) if k < 0 else 1 - Fraction(2) ** (-1 - 2 * k)

    for k in range(-5, 6):
        if gens.alpha(k) != expected(k) or list(support(gens.b_conj(k))) != [(expected(k), expected(k + 1))]:
            return False, f"k={k}"
    return True, "alpha_k exact for |k|<=5"


# wreath and arithmetic

@check("wreath.roundtrip")
def _wreath_roundtrip(rng, trials):
    gens = make_generators(THOMPSON, Fraction(1, 2))
    one = PLMap.identity(THOMPSON)
    for _ in range(trials):
        u = random_wreath(rng)
        x = embed(u, gens)
        if wreath_decompose(x, gens) != u or (x == one) != u.is_identity():
            return False, f"u={u}"
    return True, f"normal forms={trials}"


@check("wreath.homomorphism")
def _wreath_hom(rng, trials):
    gens = make_generators(THOMPSON, Fraction(1, 2))
    for _ in range(max(1, trials // 4)):
        u, v = random_wreath(rng, 3, 2, 4), random_wreath(rng, 3, 2, 4)
        if embed(w_multiply(u, v), gens) != compose(embed(u, gens), embed(v, gens)):
            return False, f"u={u} v={v}"
    return True, f"pairs={max(1, trials // 4)}"


@check("wreath.gadgets")
def _gadgets(rng, trials):
    for m in range(-12, 13):
        for k in range(-12, 13):
            g = WreathElement.make(k, {0: 1})
            want = k == 0 if m == 0 else k % m == 0
            if in_H_coset_of_centralizer(g, m) != want:
                return False, f"coset m={m} k={k}"
    for _ in range(trials):
        k, l = rng.randint(-30, 30), rng.randint(-30, 30)
        if mul_from_add_div(k, l) != k * l:
            return False, f"mul {k}*{l}"
        n = rng.randint(0, 10_000)
        if sum(v * v for v in four_squares(n)) != n:
            return False, f"four squares {n}"
    return True, f"samples={trials}"


@check("interp.bridges")
def _bridges(rng, trials):
    ctx = THOMPSON
    enc = {k: encode_nat(ctx, k) for k in range(1, 62)}
    for _ in range(trials):
        i, j = rng.randint(1, 30), rng.randint(1, 30)
        if not add_bridge(enc[i], enc[j], enc[i + j]) or add_bridge(enc[i], enc[j], enc[i + j + 1]):
            return False, f"add {i}+{j}"
        if divides_bridge(enc[i], enc[j]) != (j % i == 0):
            return False, f"divides {i}|{j}"
        if j % i == 0 and divides_witness(enc[i], enc[j]) is None:
            return False, f"no witness {i}|{j}"
    return True, f"pairs={trials}"


@check("interp.predicates")
def _predicates(rng, trials):
    for _ in range(trials):
        c = classify(random_F(THOMPSON, rng))
        if c.in_F_circle == c.in_E or (c.in_E2 and not c.in_E) or (c.in_P_plus and c.in_P_minus):
            return False, f"class {c}"
        if c.in_U and not (c.in_E2 and not c.in_P):
            return False, f"class {c}"
        x, y = random_F(THOMPSON, rng), random_F(THOMPSON, rng)
        if not classify(compose(compose(inverse(x), inverse(y)), compose(x, y))).in_F_circle:
            return False, "commutator outside F°"
    return True, f"maps={trials}"


# logic

@check("folog.parse_roundtrip")
def _parse_roundtrip(rng, trials):
    for _ in range(trials):
        f = random_sentence(SIGMA, rng)
        if parse(render(f)) != f:
            return False, render(f)
    return True, f"sentences={trials}"


@check("folog.reduce")
def _reduce(rng, trials):
    n = max(1, trials // 2)
    for _ in range(n):
        N = random_structure(GAMMA, rng, min_size=2)
        data = random_interpretation(N, rng)
        alpha = random_sentence(SIGMA, rng)
        if evaluate(quotient(N, data), alpha) != evaluate(N, reduce(alpha, data)):
            return False, render(alpha)
    return True, f"instances={n}"


@check("folog.relationalize")
def _relationalize(rng, trials):
    sig = Signature.of({"P": 1}, {"f": 1, "g": 2, "c": 0})
    n = max(1, trials // 4)
    for _ in range(n):
        M = random_structure(sig, rng)
        M2 = relationalize_structure(M)
        f = parse(rng.choice(_FUNCTION_SENTENCES), constants=("c",))
        if evaluate(M, f) != evaluate(M2, relationalize_sentence(f)):
            return False, render(f)
    return True, f"instances={n}"


_FUNCTION_SENTENCES = [
    "forall x (f(f(x)) = x)", "exists x (g(x, c) = f(x))", "forall x, y (g(x, y) = g(y, x))",
    "P(c) -> exists x (P(f(x)))", "forall x (P(x) <-> P(g(x, f(c))))", "exists x (f(x) = c & ~P(x))",
]


@check("folog.admissible_renaming")
def _admissible_renaming(rng, trials):
    n = max(1, trials // 4)
    for _ in range(n):
        N = random_structure(GAMMA, rng, min_size=2)
        data = random_interpretation(N, rng)
        perm = list(range(N.size))
        rng.shuffle(perm)
        moved = data.with_values([perm[v] for v in data.values])
        if admissible(N.renamed(perm), moved) != admissible(N, data):
            return False, "renaming changed admissibility"
    return True, f"instances={n}"


# commutators and continuity

@check("commutators.decompose")
def _decompose(rng, trials):
    n = max(1, trials // 10)
    for _ in range(n):
        pairs = random_commutator_pairs(THOMPSON, rng, rng.randint(3, 6), Fraction(1, 4), Fraction(3, 4))
        d = decompose_to_two(pairs)
        if len(d.pairs) != 2 or not all(classify(e).in_F_circle for p in d.pairs for e in p):
            return False, "shape"
    return True, f"lists={n}"


@dataclass
class ContinuityReport:
    trials: int
    commuting: int = 0
    commuting_by_kind: dict = field(default_factory=dict)
    counterexamples: list = field(default_factory=list)
    control_detected: bool = False


def _bijection_commutes(v: PLBijection, w: PLBijection) -> bool:
    return compose_bijections(v, w) == compose_bijections(w, v)


def _bijection_power(v: PLBijection, k: int) -> PLBijection:
    base = v if k > 0 else invert_bijection(v)
    out = base
    for _ in range(abs(k) - 1):
        out = compose_bijections(out, base)
    return out


def continuity_campaign(seed: int, trials: int, ctx: GroupContext = THOMPSON) -> ContinuityReport:
    """Search for a discontinuous element of V commuting with a full bump.

    Candidates cycle through random elements of V, random elements of T,
    powers of the bump itself and products of such powers with random
    elements of V.  Elements of V are right-continuous at 0 and have finitely
    many discontinuities by construction, so commuting is the only filter.
    A control with a bump that is not full confirms that the search does
    detect discontinuous commuting elements when the hypothesis fails.
    """
    rng = _rng(seed, "continuity")
    report = ContinuityReport(trials)
    kinds = ("V", "T", "power", "product")
    for i in range(trials):
        z = to_bijection(random_full_bump(ctx, rng))
        kind = kinds[i % len(kinds)]
        if kind in ("V", "T"):
            v = random_V(ctx, rng, kind=kind)
        else:
            v = _bijection_power(z, rng.choice([-3, -2, -1, 1, 2, 3]))
            if kind == "product":
                v = compose_bijections(v, random_V(ctx, rng))
        if _bijection_commutes(v, z):
            report.commuting += 1
            report.commuting_by_kind[kind] = report.commuting_by_kind.get(kind, 0) + 1
            if discontinuities(v):
                report.counterexamples.append(v)
    half = ctx.r / 2
    partial = to_bijection(make_bump(ctx, 0, half, ctx.n, Fraction(1, ctx.n)))
    q = half + ctx.r / 4
    swap = PLBijection.from_intervals(ctx, [(0, half), (half, q), (q, ctx.r)],
                                      [(0, half), (q, ctx.r), (half, q)])
    report.control_detected = _bijection_commutes(swap, partial) and bool(discontinuities(swap))
    return report


@check("plmaps.continuity")
def _continuity(rng, trials):
    rep = continuity_campaign(rng.randrange(2 ** 32), trials)
    ok = not rep.counterexamples and rep.control_detected
    return ok, (f"trials={rep.trials} commuting={rep.commuting} "
                f"counterexamples={len(rep.counterexamples)} control={rep.control_detected}")


def run_campaign(config: CampaignConfig) -> list[CheckResult]:
    names = sorted(CHECKS if config.only is None else
                   [n for n in CHECKS if any(n.startswith(p) for p in config.only)])
    results = []
    for name in names:
        try:
            ok, detail = CHECKS[name](_rng(config.seed, name), config.trials)
        except Exception as exc:  # a crash is a failed check, not a crashed report
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        results.append(CheckResult(name, ok, detail))
    return results


def format_report(results: list[CheckResult], config: CampaignConfig) -> str:
    lines = [r.line() for r in results]
    failed = sum(not r.passed for r in results)
    lines.append(f"SUMMARY seed={config.seed} trials={config.trials} checks={len(results)} failed={failed}")
    return "\n".join(lines) + "\n"
