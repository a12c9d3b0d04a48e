"""Interpretations of a relational (or functional) Σ-structure in a finite
Γ-structure N, given by formulas ``phi(x, y)``, ``psi(x, y1, y2)`` and
``xi_sigma(x, y1, ..., yk)`` with parameters ``x`` taking values in N.

* :func:`admissible` decides whether the data define a structure at all.
* :func:`quotient` builds that structure on the ψ-classes of the φ-set.
* :func:`reduce` translates a Σ-sentence ``alpha`` into a Γ-formula
  ``alpha^t`` with ``quotient(N) |= alpha  iff  N |= alpha^t(a)``.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Any, Mapping, Optional, Sequence

from .structures import FiniteStructure, Signature, compile_formula, satisfying
from .syntax import (BINARY, QUANTIFIERS, Elem, Eq, Exists, Forall, Formula, Implies, Not,
                     Rel, Truth, Var, all_names, conj, free_vars, fresh_name, parse, render,
                     substitute)


@dataclass(frozen=True)
class Template:
    """A formula together with the ordered tuple of its argument variables."""

    vars: tuple
    formula: Formula

    def __post_init__(self):
        object.__setattr__(self, "vars", tuple(self.vars))
        if len(set(self.vars)) != len(self.vars):
            raise ValueError(f"repeated template variable in {self.vars}")

    @classmethod
    def of(cls, variables: Sequence[str], text: str, constants: Sequence[str] = ()) -> "Template":
        return cls(tuple(variables), parse(text, constants))

    def instantiate(self, args: Sequence[str], keep: Sequence[str] = ()) -> Formula:
        """The formula with its argument variables renamed to ``args``; the
        names in ``keep`` (parameters) pass through unchanged."""
        if len(args) != len(self.vars):
            raise ValueError(f"template takes {len(self.vars)} variables, got {len(args)}")
        mapping = {v: Var(a) for v, a in zip(self.vars, args) if v != a}
        return substitute(self.formula, mapping)


@dataclass(frozen=True)
class InterpretationData:
    """Dimension, parameters with their values, and the defining formulas.

    ``symbols`` holds ``xi_sigma`` for every symbol of ``sigma``: a relation of
    arity k takes ``k * dim`` variables, a function of arity k takes
    ``(k + 1) * dim`` (arguments first, value last).
    """

    dim: int
    sigma: Signature
    domain: Template
    equality: Template
    symbols: Mapping[str, Template]
    params: tuple = ()
    values: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "params", tuple(self.params))
        object.__setattr__(self, "values", tuple(self.values))
        if self.dim < 1:
            raise ValueError("dimension must be at least 1")
        if len(self.params) != len(self.values):
            raise ValueError("each parameter needs exactly one value")
        expected = {name: arity * self.dim for name, arity in self.sigma.relations}
        expected.update({name: (arity + 1) * self.dim for name, arity in self.sigma.functions})
        if set(expected) != set(self.symbols):
            raise ValueError(f"formulas given for {sorted(self.symbols)}, signature has {sorted(expected)}")
        checks = [("domain", self.domain, self.dim), ("equality", self.equality, 2 * self.dim)]
        checks += [(k, self.symbols[k], n) for k, n in expected.items()]
        for label, tpl, n in checks:
            if len(tpl.vars) != n:
                raise ValueError(f"{label} formula takes {len(tpl.vars)} variables, expected {n}")
            extra = free_vars(tpl.formula) - set(tpl.vars) - set(self.params)
            if extra:
                raise ValueError(f"{label} formula has unexpected free variables {sorted(extra)}")
            if set(tpl.vars) & set(self.params):
                raise ValueError(f"{label} formula reuses a parameter name as an argument")

    def templates(self) -> list[Template]:
        return [self.domain, self.equality] + [self.symbols[k] for k in sorted(self.symbols)]

    def with_values(self, values: Sequence[Any]) -> "InterpretationData":
        return InterpretationData(self.dim, self.sigma, self.domain, self.equality,
                                  dict(self.symbols), self.params, tuple(values))

    def to_json(self) -> str:
        def tpl(t: Template):
            return {"vars": list(t.vars), "formula": render(t.formula)}
        return json.dumps({
            "dim": self.dim,
            "relations": self.sigma.rel,
            "functions": self.sigma.func,
            "params": list(self.params),
            "values": list(self.values),
            "domain": tpl(self.domain),
            "equality": tpl(self.equality),
            "symbols": {k: tpl(v) for k, v in sorted(self.symbols.items())},
        }, indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "InterpretationData":
        raw = json.loads(text)

        def tpl(d):
            return Template(tuple(d["vars"]), parse(d["formula"]))
        return cls(int(raw["dim"]), Signature.of(raw.get("relations", {}), raw.get("functions", {})),
                   tpl(raw["domain"]), tpl(raw["equality"]),
                   {k: tpl(v) for k, v in raw["symbols"].items()},
                   tuple(raw.get("params", ())), tuple(raw.get("values", ())))


# semantic side

@dataclass
class _Tables:
    """The φ-set, the ψ-classes and class lookup for fixed N and data."""

    points: list
    cls_of: dict
    classes: list
    holds: dict = field(default_factory=dict)


def _params_env(data: InterpretationData) -> dict:
    return dict(zip(data.params, data.values))


def _points(N: FiniteStructure, data: InterpretationData) -> list:
    return satisfying(N, data.domain.formula, data.domain.vars, _params_env(data))


def _relation_on(N: FiniteStructure, data: InterpretationData, tpl: Template, points: Sequence,
                 k: int) -> set:
    """Tuples ``(p1, ..., pk)`` of φ-points on which ``tpl`` holds."""
    test = compile_formula(tpl.formula, N)
    env = _params_env(data)
    out = set()
    for combo in itertools.product(points, repeat=k):
        env.update(zip(tpl.vars, itertools.chain.from_iterable(combo)))
        if test(env):
            out.add(combo)
    return out


def admissibility_failure(N: FiniteStructure, data: InterpretationData) -> Optional[str]:
    """None when the data are admissible in N, else the first violated condition.

    Conditions: the φ-set is nonempty; ψ is reflexive, symmetric and transitive
    on it; every ξ for a relation symbol is compatible with ψ; every ξ for a
    function symbol is compatible with ψ and is the graph of a total operation
    on the classes.
    """
    try:
        return _admissibility(N, data)[0]
    except (KeyError, ValueError) as exc:
        return f"evaluation failed: {exc}"


def _admissibility(N: FiniteStructure, data: InterpretationData) -> tuple[Optional[str], Optional[_Tables]]:
    if N.signature.admits(conj(t.formula for t in data.templates())):
        return "formulas use symbols outside the signature of N", None
    points = _points(N, data)
    if not points:
        return "the domain formula defines the empty set", None
    eq = _relation_on(N, data, data.equality, points, 2)
    for p in points:
        if (p, p) not in eq:
            return f"psi is not reflexive at {p}", None
    for p, q in eq:
        if (q, p) not in eq:
            return f"psi is not symmetric on {p}, {q}", None
    for p, q in eq:
        for r in points:
            if (q, r) in eq and (p, r) not in eq:
                return f"psi is not transitive on {p}, {q}, {r}", None
    cls_of: dict = {}
    classes: list = []
    for p in points:
        if p in cls_of:
            continue
        idx = len(classes)
        members = [q for q in points if (p, q) in eq]
        classes.append(members)
        for q in members:
            cls_of[q] = idx
    tables = _Tables(points, cls_of, classes)
    reps = [c[0] for c in classes]
    arities = dict(data.sigma.relations)
    arities.update({k: a + 1 for k, a in data.sigma.functions})
    for name in sorted(arities):
        k = arities[name]
        rel = _relation_on(N, data, data.symbols[name], points, k)
        for combo in itertools.product(points, repeat=k):
            rep = tuple(reps[cls_of[p]] for p in combo)
            if (combo in rel) != (rep in rel):
                return f"xi for {name} is not compatible with psi at {combo}", None
        if name in data.sigma.func:
            for args in itertools.product(range(len(classes)), repeat=k - 1):
                outs = {cls_of[c[-1]] for c in rel if tuple(cls_of[p] for p in c[:-1]) == args}
                if len(outs) != 1:
                    return f"xi for {name} is not the graph of an operation at classes {args}", None
        tables.holds[name] = {tuple(cls_of[p] for p in c) for c in rel}
    return None, tables


def admissible(N: FiniteStructure, data: InterpretationData) -> bool:
    return admissibility_failure(N, data) is None


def quotient_with_classes(N: FiniteStructure, data: InterpretationData) -> tuple[FiniteStructure, list]:
    """The interpreted structure, plus the ψ-classes (lists of N-tuples) in
    the order of its universe."""
    problem, tables = _admissibility(N, data)
    if problem:
        raise ValueError(f"inadmissible interpretation: {problem}")
    rels = {k: v for k, v in tables.holds.items() if k in data.sigma.rel}
    funcs = {}
    for name in data.sigma.func:
        funcs[name] = {c[:-1]: c[-1] for c in tables.holds[name]}
    M = FiniteStructure.build(len(tables.classes), rels, funcs, data.sigma.rel)
    return M, tables.classes


def quotient(N: FiniteStructure, data: InterpretationData) -> FiniteStructure:
    return quotient_with_classes(N, data)[0]


# syntactic side

def translate(f: Formula, data: InterpretationData, free: Optional[Mapping[str, Sequence[str]]] = None,
              taken: Optional[set[str]] = None) -> Formula:
    """The reduction of a relational Σ-formula.  Each free variable of ``f``
    must be mapped by ``free`` to a ``dim``-tuple of Γ-variable names; bound
    variables get fresh tuples.  Parameters stay free."""
    free = {k: tuple(v) for k, v in (free or {}).items()}
    missing = free_vars(f) - set(free)
    if missing:
        raise ValueError(f"free variables {sorted(missing)} need Γ-variable tuples")
    if taken is None:
        taken = set(data.params) | {v for t in free.values() for v in t} | all_names(f)
        for tpl in data.templates():
            taken |= all_names(tpl.formula)
    return _tr(f, data, free, taken)


def _tr(f: Formula, data: InterpretationData, env: dict, taken: set[str]) -> Formula:
    keep = data.params
    if isinstance(f, Truth):
        return f
    if isinstance(f, Eq):
        names = []
        for t in (f.left, f.right):
            if not isinstance(t, Var):
                raise ValueError("reduction needs a relational formula; relationalize it first")
            names.extend(env[t.name])
        return data.equality.instantiate(names, keep)
    if isinstance(f, Rel):
        if f.name not in data.symbols:
            raise ValueError(f"no formula for symbol {f.name}")
        if f.name in data.sigma.func:
            raise ValueError(f"{f.name} is a function symbol; relationalize first")
        names = []
        for t in f.args:
            if not isinstance(t, Var):
                raise ValueError("reduction needs a relational formula; relationalize it first")
            names.extend(env[t.name])
        return data.symbols[f.name].instantiate(names, keep)
    if isinstance(f, Not):
        return Not(_tr(f.body, data, env, taken))
    if isinstance(f, BINARY):
        return type(f)(_tr(f.left, data, env, taken), _tr(f.right, data, env, taken))
    if isinstance(f, QUANTIFIERS):
        inner = dict(env)
        new_vars: list[str] = []
        guards = []
        for v in f.vars:
            block = tuple(fresh_name(f"{v}_{i}", taken) for i in range(1, data.dim + 1))
            inner[v] = block
            new_vars.extend(block)
            guards.append(data.domain.instantiate(block, keep))
        body = _tr(f.body, data, inner, taken)
        if isinstance(f, Forall):
            guard = conj(guards)
            return Forall(tuple(new_vars), body if guard == Truth(True) else Implies(guard, body))
        return Exists(tuple(new_vars), conj(guards + [body]))
    raise TypeError(f"not a formula: {f!r}")


def instantiate_parameters(f: Formula, data: InterpretationData) -> Formula:
    """Replace the parameter variables by the named elements of N."""
    return substitute(f, {p: Elem(v) for p, v in zip(data.params, data.values)})


def reduce(alpha: Formula, data: InterpretationData, substitute_params: bool = True) -> Formula:
    """``alpha^t``, with the parameters replaced by their values unless
    ``substitute_params`` is false (then they remain free variables)."""
    if free_vars(alpha):
        raise ValueError(f"not a sentence: free variables {sorted(free_vars(alpha))}")
    out = translate(alpha, data)
    return instantiate_parameters(out, data) if substitute_params else out


# composition

def compose_interpretations(inner: InterpretationData, outer: InterpretationData,
                            N: FiniteStructure) -> InterpretationData:
    """Interpret the Λ-structure ``quotient(quotient(N, inner), outer)``
    directly in N.

    ``outer`` is written over Σ (the signature interpreted by ``inner``) and
    its parameter values are elements of ``quotient(N, inner)``; they are
    carried over as representative tuples of their classes.
    """
    M, classes = quotient_with_classes(N, inner)
    taken = set(inner.params)
    for tpl in inner.templates() + outer.templates():
        taken |= all_names(tpl.formula)
    taken |= set(outer.params)
    free: dict[str, tuple] = {}
    params = list(inner.params)
    values = list(inner.values)
    for p, v in zip(outer.params, outer.values):
        block = tuple(fresh_name(f"{p}_{i}", taken) for i in range(1, inner.dim + 1))
        free[p] = block
        params.extend(block)
        values.extend(classes[v][0])

    def lift(tpl: Template, guard: bool) -> Template:
        blocks = []
        names: list[str] = []
        local = dict(free)
        for v in tpl.vars:
            block = tuple(fresh_name(f"{v}_{i}", taken) for i in range(1, inner.dim + 1))
            blocks.append(block)
            names.extend(block)
            local[v] = block
        body = translate(tpl.formula, inner, local, taken)
        if guard:
            body = conj([inner.domain.instantiate(b, inner.params) for b in blocks] + [body])
        return Template(tuple(names), body)

    return InterpretationData(
        inner.dim * outer.dim, outer.sigma,
        lift(outer.domain, True), lift(outer.equality, False),
        {k: lift(t, False) for k, t in outer.symbols.items()},
        tuple(params), tuple(values))


def reduce_in_two_steps(alpha: Formula, inner: InterpretationData, outer: InterpretationData,
                        N: FiniteStructure) -> tuple[Formula, dict]:
    """Reduce through ``outer`` (parameters kept free) and then through
    ``inner``.  Returns the Γ-formula and the assignment of its free
    variables: inner parameters, and one representative tuple per outer
    parameter."""
    _, classes = quotient_with_classes(N, inner)
    step = reduce(alpha, outer, substitute_params=False)
    taken = all_names(step) | set(inner.params)
    for tpl in inner.templates():
        taken |= all_names(tpl.formula)
    free = {}
    assignment = dict(zip(inner.params, inner.values))
    for p, v in zip(outer.params, outer.values):
        block = tuple(fresh_name(f"{p}_{i}", taken) for i in range(1, inner.dim + 1))
        free[p] = block
        assignment.update(zip(block, classes[v][0]))
    return translate(step, inner, free, taken), assignment
