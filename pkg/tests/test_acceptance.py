"""Acceptance criteria, one test each.

Every check is exact (tolerance zero).  Each test records one line
``PASS|FAIL criterion N: <summary> (<seconds> s, limit <L> s)`` which the
terminal summary prints after the run; ``python3 tests/test_acceptance.py``
runs the same checks without pytest.
"""

import random
import sys
import time
from fractions import Fraction as Q


from plthompson.commutators import CommutatorList, decompose_to_two
from plthompson.constructions import make_bump, thompson_generators, thompson_standard
from plthompson.folog import (InterpretationData, Signature, Template, admissible, alpha_equivalent,
                              evaluate, parse, quotient, reduce)
from plthompson.interp import add_bridge, classify, divides_bridge, divides_witness, encode_nat
from plthompson.numbers import THOMPSON
from plthompson.plmaps import (PLMap, commutes, compose, discontinuities, is_increasing_everywhere,
                               slope_left, slope_right, support)
from plthompson.sampling import (GAMMA, SIGMA, random_commutator_pairs, random_F, random_interpretation,
                                 random_sentence, random_structure, random_wreath)
from plthompson.selftest import continuity_campaign
from plthompson.wreath import (WreathElement, embed, four_squares, in_H_coset_of_centralizer,
                               mul_from_add_div, wreath_decompose)

RESULTS: list[str] = []


def record(number: int, ok: bool, summary: str, elapsed: float, limit: float) -> None:
    within = elapsed < limit
    status = "PASS" if ok and within else "FAIL"
    RESULTS.append(f"{status} criterion {number}: {summary} ({elapsed:.2f} s, limit {limit:g} s)")
    assert ok, summary
    assert within, f"took {elapsed:.2f} s, limit {limit} s"


def alpha_k(k: int) -> Q:
    return Q(2) ** (-1 + 2 * k) if k < 0 else 1 - Q(2) ** (-1 - 2 * k)


def test_criterion_1_thompson_anchor():
    start = time.perf_counter()
    x0, _ = thompson_standard()
    gens = thompson_generators()
    ok = list(support(x0)) == [(0, 1)]
    ok &= (gens.alpha(-1), gens.alpha(0), gens.alpha(1)) == (Q(1, 8), Q(1, 2), Q(7, 8))
    for k in range(-5, 6):
        ok &= gens.alpha(k) == alpha_k(k)
        ok &= list(support(gens.b_conj(k))) == [(alpha_k(k), alpha_k(k + 1))]
    record(1, ok, "supp(x0) = ]0;1[ and supp(a^-k b a^k) = ]alpha_k;alpha_k+1[ for |k| <= 5",
           time.perf_counter() - start, 1)


def test_criterion_2_chain_rule():
    rng = random.Random(2)
    start = time.perf_counter()
    bad, points = 0, 0
    for _ in range(1000):
        f, g = random_F(THOMPSON, rng), random_F(THOMPSON, rng)
        fg = compose(f, g)
        for t in sorted(set(fg.xs) | set(f.xs)):
            points += 1
            if t < 1 and slope_right(fg, t) != slope_right(f, t) * slope_right(g, f(t)):
                bad += 1
            if t > 0 and slope_left(fg, t) != slope_left(f, t) * slope_left(g, f(t)):
                bad += 1
    record(2, bad == 0, f"1000 pairs, {points} breakpoints, {bad} mismatches",
           time.perf_counter() - start, 5)


def test_criterion_3_bump_grid():
    windows = [(Q(0), Q(1)), (Q(1, 4), Q(1, 2)), (Q(1, 8), Q(7, 8)), (Q(0), Q(3, 16)), (Q(5, 8), Q(1))]
    start = time.perf_counter()
    bad, count = [], 0
    for p in (2, 4, 8):
        for q in (Q(1, 2), Q(1, 4), Q(1, 8)):
            for a, b in windows:
                x = make_bump(THOMPSON, a, b, p, q)
                count += 1
                if (list(support(x)) != [(a, b)] or slope_right(x, a) != p or slope_left(x, b) != q
                        or not is_increasing_everywhere(x)):
                    bad.append((p, q, a, b))
    record(3, count == 45 and not bad, f"{count} bumps, {len(bad)} wrong",
           time.perf_counter() - start, 5)


def test_criterion_4_wreath_round_trip():
    rng = random.Random(4)
    gens = thompson_generators()
    one = PLMap.identity(THOMPSON)
    start = time.perf_counter()
    bad = trivial = 0
    for _ in range(1000):
        u = random_wreath(rng, max_shift=5, max_exp=3, width=7)
        x = embed(u, gens)
        trivial += u.is_identity()
        if wreath_decompose(x, gens) != u or (x == one) != u.is_identity():
            bad += 1
    record(4, bad == 0, f"1000 normal forms ({trivial} trivial), {bad} failures",
           time.perf_counter() - start, 30)


def test_criterion_5_arithmetic():
    start = time.perf_counter()
    enc = {k: encode_nat(THOMPSON, k) for k in range(1, 62)}
    bad = []
    for i in range(1, 31):
        for j in range(1, 31):
            if not add_bridge(enc[i], enc[j], enc[i + j]):
                bad.append(f"{i}+{j}")
            if add_bridge(enc[i], enc[j], enc[i + j + 1]):
                bad.append(f"{i}+{j}!={i + j + 1}")
            if add_bridge(enc[i], enc[j], enc[i + j - 1]):
                bad.append(f"{i}+{j}!={i + j - 1}")
            if divides_bridge(enc[i], enc[j]) != (j % i == 0):
                bad.append(f"{i}|{j}")
    divisible = [(i, j) for i in range(1, 31) for j in range(1, 31) if j % i == 0]
    rng = random.Random(5)
    verified = 0
    for i, j in rng.sample(divisible, 50):
        x, y = enc[i], enc[j]
        w = divides_witness(x, y)
        ok = (w is not None and classify(w.z).in_F_circle
              and compose(x, w.z) == compose(w.x1, w.x2)
              and commutes(w.w, compose(x, w.z))
              and classify(compose(y, w.w)).in_F_circle
              and w.exponent == -(j // i))
        verified += ok
        if not ok:
            bad.append(f"witness {i}|{j}")
    record(5, not bad and verified == 50,
           f"[1;30]^2 add (i+j, i+j+-1) and divides exact, {verified}/50 witnesses verified",
           time.perf_counter() - start, 60)


def test_criterion_6_wreath_gadgets():
    start = time.perf_counter()
    bad = []
    for m in range(-12, 13):
        for k in range(-12, 13):
            g = WreathElement.make(k, {0: 1, 2: -1})
            if in_H_coset_of_centralizer(g, m) != (k == 0 if m == 0 else k % m == 0):
                bad.append(f"coset {m}|{k}")
    for k in range(-30, 31):
        for l in range(-30, 31):
            if mul_from_add_div(k, l) != k * l:
                bad.append(f"mul {k}*{l}")
    for k in range(10_001):
        if sum(v * v for v in four_squares(k)) != k:
            bad.append(f"squares {k}")
    record(6, not bad, f"cosets |m|,|k|<=12, products |k|,|l|<=30, four squares k<=10^4: {len(bad)} failures",
           time.perf_counter() - start, 30)


def worked_pair_ok() -> bool:
    params = ("x1", "x2")
    data = InterpretationData(
        2, Signature.of({"S": 2}),
        Template.of(["u1", "u2"], "phi(x1, x2, u1, u2)"),
        Template.of(["u1", "u2", "v1", "v2"], "psi(x1, x2, u1, u2, v1, v2)"),
        {"S": Template.of(["u1", "u2", "v1", "v2"], "xi(x1, x2, u1, u2, v1, v2)")},
        params, (0, 0))
    alpha = parse("forall y1, y2, y3 (S(y1, y2) & S(y1, y3) -> y2 = y3)")
    expected = parse(
        "forall a1, a2, b1, b2, c1, c2 (phi(x1, x2, a1, a2) & phi(x1, x2, b1, b2) & phi(x1, x2, c1, c2)"
        " -> (xi(x1, x2, a1, a2, b1, b2) & xi(x1, x2, a1, a2, c1, c2) -> psi(x1, x2, b1, b2, c1, c2)))")
    return alpha_equivalent(reduce(alpha, data, substitute_params=False), expected)


def test_criterion_7_interpretation_compiler():
    rng = random.Random(7)
    start = time.perf_counter()
    sentences = [random_sentence(SIGMA, rng) for _ in range(30)]
    mismatches = instances = 0
    for _ in range(10):
        N = random_structure(GAMMA, rng, max_size=4, min_size=2)
        data = random_interpretation(N, rng, max_dim=2)
        assert admissible(N, data) and N.size <= 4 and data.dim <= 2
        M = quotient(N, data)
        for alpha in sentences:
            instances += 1
            mismatches += evaluate(M, alpha) != evaluate(N, reduce(alpha, data))
    worked = worked_pair_ok()
    record(7, mismatches == 0 and worked,
           f"{instances} instances, {mismatches} mismatches, worked pair reproduced: {worked}",
           time.perf_counter() - start, 60)


def test_criterion_8_two_commutators():
    rng = random.Random(8)
    start = time.perf_counter()
    bad = nontrivial = 0
    for _ in range(100):
        pairs = []
        for _ in range(rng.randint(3, 6)):
            lo = Q(rng.randint(1, 6), 8)
            hi = lo + Q(rng.randint(1, 7 - int(lo * 8)), 8)
            pairs += random_commutator_pairs(THOMPSON, rng, 1, lo, hi)
        assert all(classify(e).in_F_circle for p in pairs for e in p)
        d = decompose_to_two(pairs)
        nontrivial += not d.product.is_identity()
        ok = (len(d.pairs) == 2 and all(classify(e).in_F_circle for p in d.pairs for e in p)
              and CommutatorList(THOMPSON, d.pairs).value() == CommutatorList(THOMPSON, pairs).value())
        bad += not ok
    record(8, bad == 0, f"100 lists of length 3-6 ({nontrivial} with nontrivial product), {bad} failures",
           time.perf_counter() - start, 120)


def test_criterion_9_continuity_campaign():
    start = time.perf_counter()
    rep = continuity_campaign(seed=9, trials=1000)
    continuous_at_zero = all(0 not in discontinuities(v) for v in rep.counterexamples)
    ok = not rep.counterexamples and rep.control_detected and continuous_at_zero
    record(9, ok, f"{rep.trials} trials, {rep.commuting} commuting candidates, "
                  f"{len(rep.counterexamples)} counterexamples, control detected: {rep.control_detected}",
           time.perf_counter() - start, 30)


if __name__ == "__main__":
    failed = 0
    for number in range(1, 10):
        fn = next(v for k, v in globals().items() if k.startswith(f"test_criterion_{number}_"))
        try:
            fn()
        except AssertionError:
            failed += 1
        print(RESULTS[-1])
    sys.exit(1 if failed else 0)
