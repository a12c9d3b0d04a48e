"""Seeded random generators: elements of F, T and V from pairs of n-ary
subdivisions, wreath normal forms, commutator lists, and first-order
sentences, structures and admissible interpretations."""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Optional, Sequence

from .constructions import make_bump
from .folog.interpretation import InterpretationData, Template, admissible
from .folog.structures import FiniteStructure, Signature
from .folog.syntax import (And, Eq, Exists, Forall, Formula, Iff, Implies, Not, Or, Rel, Truth,
                           Var, conj, parse, substitute)
from .numbers import GroupContext, power
from .plmaps import PLBijection, PLMap, conjugate
from .wreath import WreathElement


# piecewise-linear elements

def random_subdivision(ctx: GroupContext, leaves: int, rng: random.Random,
                       lo: Fraction = Fraction(0), hi: Optional[Fraction] = None) -> list[Fraction]:
    """Cut points of ``[lo; hi]`` obtained by repeatedly splitting a random
    piece into ``n`` equal parts until there are at least ``leaves`` pieces.
    The result has ``1 + j (n - 1)`` pieces for some ``j``."""
    hi = ctx.r if hi is None else hi
    pieces = [(lo, hi)]
    while len(pieces) < leaves:
        i = rng.randrange(len(pieces))
        a, b = pieces.pop(i)
        step = (b - a) / ctx.n
        pieces[i:i] = [(a + j * step, a + (j + 1) * step) for j in range(ctx.n)]
    return [a for a, _ in pieces] + [hi]


def _pair(ctx: GroupContext, rng: random.Random, max_leaves: int, lo=Fraction(0), hi=None):
    leaves = rng.randint(1, max_leaves)
    return random_subdivision(ctx, leaves, rng, lo, hi), random_subdivision(ctx, leaves, rng, lo, hi)


def random_F(ctx: GroupContext, rng: random.Random, max_leaves: int = 8) -> PLMap:
    """An element of F mapping the pieces of one random subdivision affinely
    onto those of another with the same number of pieces."""
    src, dst = _pair(ctx, rng, max_leaves)
    return PLMap(ctx, list(zip(src, dst)), check=False)


def random_F_in(ctx: GroupContext, lo: Fraction, hi: Fraction, rng: random.Random,
                max_leaves: int = 6) -> PLMap:
    """A random element supported in ``[lo; hi]``."""
    src, dst = _pair(ctx, rng, max_leaves, lo, hi)
    pts = [(Fraction(0), Fraction(0))] if lo > 0 else []
    pts += list(zip(src, dst))
    if hi < ctx.r:
        pts.append((ctx.r, ctx.r))
    return PLMap(ctx, pts, check=False)


def random_V(ctx: GroupContext, rng: random.Random, max_leaves: int = 8, kind: str = "V") -> PLBijection:
    """A random element of V (any permutation of pieces), T (a cyclic
    rotation of pieces) or F (pieces in order)."""
    src, dst = _pair(ctx, rng, max_leaves)
    dom = list(zip(src, src[1:]))
    img = list(zip(dst, dst[1:]))
    m = len(img)
    if kind == "V":
        rng.shuffle(img)
    elif kind == "T":
        shift = rng.randrange(m)
        img = img[shift:] + img[:shift]
    elif kind != "F":
        raise ValueError(f"unknown kind {kind!r}")
    return PLBijection.from_intervals(ctx, dom, img)


def rotation(ctx: GroupContext, c: Fraction) -> PLBijection:
    """``t -> t + c mod r``."""
    r = ctx.r
    return PLBijection.from_intervals(ctx, [(0, r - c), (r - c, r)], [(c, r), (0, c)])


def random_full_bump(ctx: GroupContext, rng: random.Random) -> PLMap:
    """An element moving every point of ``]0; r[`` upward: a conjugate of a
    bump on the whole interval by a random element of F."""
    p = power(ctx, rng.randint(1, 3))
    q = power(ctx, -rng.randint(1, 3))
    z = make_bump(ctx, 0, ctx.r, p, q)
    return conjugate(z, random_F(ctx, rng, 6))


def random_wreath(rng: random.Random, max_shift: int = 5, max_exp: int = 3, width: int = 7,
                  min_index: int = -3) -> WreathElement:
    start = rng.randint(min_index, min_index + width - 1)
    coeffs = {}
    for k in range(start, start + rng.randint(0, width)):
        e = rng.randint(-max_exp, max_exp)
        if e:
            coeffs[k] = e
    return WreathElement.make(rng.randint(-max_shift, max_shift), coeffs)


def random_commutator_pairs(ctx: GroupContext, rng: random.Random, count: int,
                            lo: Fraction, hi: Fraction, max_leaves: int = 5) -> list[tuple[PLMap, PLMap]]:
    """Pairs of random elements supported in ``[lo; hi]`` (so in F° when
    ``0 < lo < hi < r``)."""
    return [(random_F_in(ctx, lo, hi, rng, max_leaves), random_F_in(ctx, lo, hi, rng, max_leaves))
            for _ in range(count)]


# first-order objects

SIGMA = Signature.of({"S": 2, "T": 1})
GAMMA = Signature.of({"R": 2, "P": 1})


def random_structure(sig: Signature, rng: random.Random, max_size: int = 4, density: float = 0.4,
                     min_size: int = 1) -> FiniteStructure:
    size = rng.randint(min_size, max_size)
    rels = {}
    for name, arity in sig.relations:
        rels[name] = [t for t in _tuples(size, arity) if rng.random() < density]
    funcs = {}
    for name, arity in sig.functions:
        funcs[name] = {t: rng.randrange(size) for t in _tuples(size, arity)}
    return FiniteStructure.build(size, rels, funcs, sig.rel)


def _tuples(size: int, arity: int):
    if arity == 0:
        yield ()
        return
    for t in _tuples(size, arity - 1):
        for v in range(size):
            yield t + (v,)


def random_formula(sig: Signature, rng: random.Random, bound: Sequence[str], depth: int,
                   quantifiers_left: int, names: Sequence[str] = ("y1", "y2", "y3", "y4")) -> Formula:
    """A random relational formula whose free variables lie in ``bound``."""
    choices = ["atom"] if bound else []
    if depth > 0 and bound:
        choices += ["not", "bin", "bin"]
    fresh = [v for v in names if v not in bound]
    if quantifiers_left > 0 and fresh and depth > 0:
        choices += ["quant", "quant"]
    if not choices:
        return Truth(rng.random() < 0.5)
    kind = rng.choice(choices)
    if kind == "atom":
        rels = list(sig.relations)
        if rng.random() < 0.3 or not rels:
            return Eq(Var(rng.choice(bound)), Var(rng.choice(bound)))
        name, arity = rng.choice(rels)
        return Rel(name, tuple(Var(rng.choice(bound)) for _ in range(arity)))
    if kind == "not":
        return Not(random_formula(sig, rng, bound, depth - 1, quantifiers_left, names))
    if kind == "bin":
        op = rng.choice([And, Or, Implies, Iff])
        return op(random_formula(sig, rng, bound, depth - 1, quantifiers_left, names),
                  random_formula(sig, rng, bound, depth - 1, quantifiers_left, names))
    if rng.random() < 0.2:
        fresh = list(names)  # allow shadowing an outer variable
    count = 1 if quantifiers_left == 1 or len(fresh) == 1 or rng.random() < 0.6 else 2
    vs = tuple(rng.sample(fresh, count))
    q = rng.choice([Forall, Exists])
    return q(vs, random_formula(sig, rng, list(bound) + list(vs), depth - 1,
                                quantifiers_left - count, names))


def random_sentence(sig: Signature, rng: random.Random, depth: int = 4, max_quantifiers: int = 3) -> Formula:
    count = 1 if rng.random() < 0.5 else 2
    names = ("y1", "y2", "y3", "y4")
    vs = tuple(names[:count])
    q = rng.choice([Forall, Exists])
    body = random_formula(sig, rng, list(vs), depth, max_quantifiers - count, names)
    return q(vs, body)


# features usable inside kernels: formulas in u with optional parameter x
_FEATURES = [
    "P(u)", "R(u, u)", "R(x, u)", "R(u, x)", "u = x", "exists v (R(u, v))",
    "exists v (R(v, u) & P(v))", "forall v (R(u, v) -> P(v))",
]
_FREE_ATOMS = ["R({0}, {1})", "P({0})", "{0} = {1}", "exists v (R({0}, v) & R(v, {1}))", "R(x, {0})"]
_SENTENCES = ["exists v (P(v))", "forall v (R(v, v))", "true", "exists v, w (R(v, w) & ~P(w))"]


def _feature(text: str, var: str) -> Formula:
    return substitute(parse(text), {"u": Var(var)})


def _bool_combo(atoms: list[Formula], rng: random.Random, depth: int = 2) -> Formula:
    if depth == 0 or rng.random() < 0.3:
        f = rng.choice(atoms)
        return Not(f) if rng.random() < 0.3 else f
    op = rng.choice([And, Or, Implies, Iff])
    return op(_bool_combo(atoms, rng, depth - 1), _bool_combo(atoms, rng, depth - 1))


def random_interpretation(N: FiniteStructure, rng: random.Random, sigma: Signature = SIGMA,
                          max_dim: int = 2, attempts: int = 50) -> InterpretationData:
    """An admissible interpretation of a Σ-structure in ``N`` (signature
    GAMMA), built so that ξ depends only on ψ-classes and then verified."""
    for _ in range(attempts):
        data = _candidate(N, rng, sigma, max_dim)
        if data is not None and admissible(N, data):
            return data
    raise RuntimeError("no admissible interpretation found")


def _candidate(N: FiniteStructure, rng: random.Random, sigma: Signature, max_dim: int):
    dim = rng.randint(1, max_dim)
    params, values = ("x",), (rng.randrange(N.size),)
    ys = tuple(f"y_{i}" for i in range(1, dim + 1))
    zs = tuple(f"z_{i}" for i in range(1, dim + 1))

    # domain: a random condition per component, or nothing
    parts = []
    for v in ys:
        if rng.random() < 0.4:
            f = _feature(rng.choice(_FEATURES), v)
            parts.append(Not(f) if rng.random() < 0.5 else f)
    domain = Template(ys, conj(parts))

    kind = rng.choice(["equal", "equal", "kernel", "kernel", "trivial", "mixed", "mixed"] if dim > 1
                      else ["equal", "equal", "kernel", "kernel", "trivial"])
    feats = rng.sample(_FEATURES, rng.randint(1, 3))
    kernel_cols = range(dim) if kind == "kernel" else range(1) if kind == "mixed" else range(0)
    equal_cols = range(dim) if kind == "equal" else range(1, dim) if kind == "mixed" else range(0)

    def eq_formula(a: Sequence[str], b: Sequence[str]) -> Formula:
        pieces = [Eq(Var(a[i]), Var(b[i])) for i in equal_cols]
        pieces += [Iff(_feature(t, a[i]), _feature(t, b[i])) for i in kernel_cols for t in feats]
        return conj(pieces)

    equality = Template(ys + zs, eq_formula(ys, zs))

    def invariant_atoms(blocks: list[tuple[str, ...]]) -> list[Formula]:
        atoms = [parse(s) for s in _SENTENCES]
        for blk in blocks:
            atoms += [_feature(t, blk[i]) for i in kernel_cols for t in feats]
        for b1 in blocks:
            for b2 in blocks:
                atoms.append(eq_formula(b1, b2))
                for i in equal_cols:
                    for j in equal_cols:
                        for s in _FREE_ATOMS:
                            atoms.append(parse(s.format(b1[i], b2[j])))
        return atoms

    symbols = {}
    for name, arity in sigma.relations:
        blocks = [tuple(f"w{k}_{i}" for i in range(1, dim + 1)) for k in range(1, arity + 1)]
        flat = tuple(v for b in blocks for v in b)
        body = _bool_combo(invariant_atoms(blocks), rng)
        symbols[name] = Template(flat, body)
    return InterpretationData(dim, sigma, domain, equality, symbols, params, values)
