"""Replacing function symbols by relation symbols holding their graphs."""

from __future__ import annotations

from .structures import FiniteStructure, Signature
from .syntax import (BINARY, QUANTIFIERS, Elem, Eq, Exists, Formula, Not, Rel, Term, Truth,
                     Var, all_names, conj, fresh_name)


def graph_name(name: str) -> str:
    return name + "'"


def relationalize(sig: Signature) -> Signature:
    rels = sig.rel
    for name, arity in sig.functions:
        new = graph_name(name)
        if new in rels:
            raise ValueError(f"graph symbol {new} already in the signature")
        rels[new] = arity + 1
    return Signature.of(rels, {})


def relationalize_structure(M: FiniteStructure) -> FiniteStructure:
    rels = {k: set(v) for k, v in M.relations.items()}
    arities = M.signature.rel
    for name, table in M.functions.items():
        new = graph_name(name)
        if new in rels:
            raise ValueError(f"graph symbol {new} already in the structure")
        rels[new] = {args + (value,) for args, value in table.items()}
        arities[new] = M.signature.func[name] + 1
    return FiniteStructure.build(M.size, rels, {}, arities)


def relationalize_sentence(f: Formula) -> Formula:
    """An equivalent formula without function symbols: each atom mentioning
    ``f(t1, ..., tk)`` becomes ``exists v (f'(t1', ..., tk', v) & atom[v])``
    with inner applications unnested the same way."""
    return _rel(f, all_names(f))


def _rel(f: Formula, taken: set[str]) -> Formula:
    if isinstance(f, Truth):
        return f
    if isinstance(f, (Eq, Rel)):
        conds: list[Formula] = []
        fresh: list[str] = []
        if isinstance(f, Eq):
            atom: Formula = Eq(_flatten(f.left, conds, fresh, taken), _flatten(f.right, conds, fresh, taken))
        else:
            atom = Rel(f.name, tuple(_flatten(a, conds, fresh, taken) for a in f.args))
        if not fresh:
            return atom
        return Exists(tuple(fresh), conj(conds + [atom]))
    if isinstance(f, Not):
        return Not(_rel(f.body, taken))
    if isinstance(f, BINARY):
        return type(f)(_rel(f.left, taken), _rel(f.right, taken))
    if isinstance(f, QUANTIFIERS):
        return type(f)(f.vars, _rel(f.body, taken))
    raise TypeError(f"not a formula: {f!r}")


def _flatten(t: Term, conds: list, fresh: list, taken: set[str]) -> Term:
    if isinstance(t, (Var, Elem)):
        return t
    args = tuple(_flatten(a, conds, fresh, taken) for a in t.args)
    v = fresh_name("u", taken)
    fresh.append(v)
    conds.append(Rel(graph_name(t.name), args + (Var(v),)))
    return Var(v)
