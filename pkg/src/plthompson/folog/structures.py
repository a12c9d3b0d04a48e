"""Signatures, finite structures, pools of group elements, and Tarskian
evaluation by compiling formulas to closures."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any, Callable, Hashable, Iterable, Mapping, Optional, Sequence

from .syntax import (And, Elem, Eq, Exists, Forall, Formula, Func, Iff, Implies, Not, Or, Rel,
                     Term, Truth, Var, free_vars, symbols)


@dataclass(frozen=True)
class Signature:
    """Relation and function symbols with arities; constants have arity 0."""

    relations: tuple[tuple[str, int], ...] = ()
    functions: tuple[tuple[str, int], ...] = ()

    def __post_init__(self):
        rels = tuple(sorted(dict(self.relations).items()))
        funcs = tuple(sorted(dict(self.functions).items()))
        if len(rels) != len(self.relations) or len(funcs) != len(self.functions):
            raise ValueError("duplicate symbol in signature")
        clash = set(dict(rels)) & set(dict(funcs))
        if clash:
            raise ValueError(f"symbols used both as relation and function: {sorted(clash)}")
        object.__setattr__(self, "relations", rels)
        object.__setattr__(self, "functions", funcs)

    @classmethod
    def of(cls, relations: Optional[Mapping[str, int]] = None,
           functions: Optional[Mapping[str, int]] = None) -> "Signature":
        return cls(tuple((relations or {}).items()), tuple((functions or {}).items()))

    @property
    def rel(self) -> dict[str, int]:
        return dict(self.relations)

    @property
    def func(self) -> dict[str, int]:
        return dict(self.functions)

    @property
    def is_relational(self) -> bool:
        return not self.functions

    def admits(self, f: Formula) -> Optional[str]:
        """None if every symbol of ``f`` is declared with the right arity,
        else a description of the first mismatch."""
        rels, funcs = symbols(f)
        for table, declared, kind in ((rels, self.rel, "relation"), (funcs, self.func, "function")):
            for name, arity in table.items():
                if name not in declared:
                    return f"undeclared {kind} {name}"
                if declared[name] != arity:
                    return f"{kind} {name} has arity {declared[name]}, used with {arity}"
        return None


class Structure:
    """Interface used by the evaluator."""

    signature: Signature

    def universe(self) -> Sequence[Any]:
        raise NotImplementedError

    def relation(self, name: str) -> Callable[[tuple], bool]:
        raise NotImplementedError

    def function(self, name: str) -> Callable[..., Any]:
        raise NotImplementedError

    def element(self, index: int) -> Any:
        raise NotImplementedError


@dataclass(frozen=True)
class FiniteStructure(Structure):
    """Universe ``0 .. size-1`` with explicit tables."""

    size: int
    relations: Mapping[str, frozenset] = field(default_factory=dict)
    functions: Mapping[str, Mapping[tuple, int]] = field(default_factory=dict)
    signature: Signature = field(init=False)

    def __post_init__(self):
        if self.size < 1:
            raise ValueError("universe must be nonempty")
        rels, rel_ar = {}, {}
        for name, tuples in self.relations.items():
            tuples = frozenset(tuple(int(v) for v in t) for t in tuples)
            arities = {len(t) for t in tuples}
            arity = self._declared_arity(name, arities)
            for t in tuples:
                self._check_range(t, name)
            rels[name], rel_ar[name] = tuples, arity
        funcs, fun_ar = {}, {}
        for name, table in self.functions.items():
            table = {tuple(int(v) for v in k): int(v) for k, v in table.items()}
            arities = {len(k) for k in table}
            if len(arities) != 1:
                raise ValueError(f"function {name} has inconsistent or missing entries")
            arity = arities.pop()
            for k, v in table.items():
                self._check_range(k + (v,), name)
            if len(table) != self.size ** arity:
                raise ValueError(f"function {name} is not total")
            funcs[name], fun_ar[name] = table, arity
        object.__setattr__(self, "relations", rels)
        object.__setattr__(self, "functions", funcs)
        object.__setattr__(self, "signature", Signature.of(rel_ar, fun_ar))

    # arities of relations that may be empty
    arity_hints: Mapping[str, int] = field(default_factory=dict, repr=False, compare=False)

    def _declared_arity(self, name: str, arities: set[int]) -> int:
        if len(arities) > 1:
            raise ValueError(f"relation {name} mixes arities {sorted(arities)}")
        if arities:
            arity = arities.pop()
            hint = self.arity_hints.get(name, arity)
            if hint != arity:
                raise ValueError(f"relation {name} declared with arity {hint}, has tuples of {arity}")
            return arity
        if name not in self.arity_hints:
            raise ValueError(f"empty relation {name} needs an arity hint")
        return self.arity_hints[name]

    def _check_range(self, t: tuple, name: str) -> None:
        for v in t:
            if not 0 <= v < self.size:
                raise ValueError(f"{name}: element {v} outside universe of size {self.size}")

    @classmethod
    def build(cls, size: int, relations: Optional[Mapping[str, Iterable[tuple]]] = None,
              functions: Optional[Mapping[str, Mapping[tuple, int]]] = None,
              arities: Optional[Mapping[str, int]] = None) -> "FiniteStructure":
        return cls(size, {k: frozenset(map(tuple, v)) for k, v in (relations or {}).items()},
                   dict(functions or {}), dict(arities or {}))

    def universe(self) -> range:
        return range(self.size)

    def relation(self, name: str) -> Callable[[tuple], bool]:
        return self.relations[name].__contains__

    def function(self, name: str) -> Callable[..., int]:
        table = self.functions[name]
        return lambda *args: table[args]

    def element(self, index: int) -> int:
        if not 0 <= index < self.size:
            raise ValueError(f"element #{index} outside universe of size {self.size}")
        return index

    def renamed(self, perm: Sequence[int]) -> "FiniteStructure":
        """The isomorphic copy in which element ``i`` becomes ``perm[i]``."""
        rels = {k: {tuple(perm[v] for v in t) for t in ts} for k, ts in self.relations.items()}
        funcs = {k: {tuple(perm[v] for v in a): perm[w] for a, w in tab.items()}
                 for k, tab in self.functions.items()}
        return FiniteStructure.build(self.size, rels, funcs, self.signature.rel)


@dataclass(frozen=True)
class PoolStructure(Structure):
    """Quantifiers range over a finite pool of (hashable) values; functions and
    relations are arbitrary callables.  Used to test formulas about a group
    on finitely many of its elements."""

    pool: tuple
    functions: Mapping[str, Callable[..., Hashable]] = field(default_factory=dict)
    relations: Mapping[str, Callable[..., bool]] = field(default_factory=dict)
    arities: Mapping[str, int] = field(default_factory=dict)
    signature: Signature = field(init=False)

    def __post_init__(self):
        rel = {k: self.arities[k] for k in self.relations}
        fun = {k: self.arities[k] for k in self.functions}
        object.__setattr__(self, "pool", tuple(self.pool))
        object.__setattr__(self, "signature", Signature.of(rel, fun))

    def universe(self) -> tuple:
        return self.pool

    def relation(self, name: str) -> Callable[[tuple], bool]:
        fn = self.relations[name]
        return lambda args: bool(fn(*args))

    def function(self, name: str) -> Callable[..., Hashable]:
        return self.functions[name]

    def element(self, index: int):
        return self.pool[index]


class EvaluationError(ValueError):
    pass


Env = dict


def _compile_term(t: Term, M: Structure) -> Callable[[Env], Any]:
    if isinstance(t, Var):
        name = t.name

        def var(env):
            try:
                return env[name]
            except KeyError:
                raise EvaluationError(f"variable {name} is unassigned") from None
        return var
    if isinstance(t, Elem):
        value = M.element(t.index)
        return lambda env: value
    if isinstance(t, Func):
        fn = M.function(t.name)
        parts = [_compile_term(a, M) for a in t.args]
        if not parts:
            return lambda env: fn()
        if len(parts) == 1:
            (p,) = parts
            return lambda env: fn(p(env))
        if len(parts) == 2:
            p, q = parts
            return lambda env: fn(p(env), q(env))
        return lambda env: fn(*(p(env) for p in parts))
    raise TypeError(f"not a term: {t!r}")


def compile_formula(f: Formula, M: Structure) -> Callable[[Env], bool]:
    """A closure evaluating ``f`` in ``M`` under a variable environment."""
    if isinstance(f, Truth):
        value = f.value
        return lambda env: value
    if isinstance(f, Eq):
        p, q = _compile_term(f.left, M), _compile_term(f.right, M)
        return lambda env: p(env) == q(env)
    if isinstance(f, Rel):
        holds = M.relation(f.name)
        parts = [_compile_term(a, M) for a in f.args]
        return lambda env: holds(tuple(p(env) for p in parts))
    if isinstance(f, Not):
        body = compile_formula(f.body, M)
        return lambda env: not body(env)
    if isinstance(f, (And, Or, Implies, Iff)):
        p, q = compile_formula(f.left, M), compile_formula(f.right, M)
        if isinstance(f, And):
            return lambda env: p(env) and q(env)
        if isinstance(f, Or):
            return lambda env: p(env) or q(env)
        if isinstance(f, Implies):
            return lambda env: (not p(env)) or q(env)
        return lambda env: p(env) == q(env)
    if isinstance(f, (Forall, Exists)):
        body = compile_formula(f.body, M)
        names = f.vars
        universe = M.universe()
        want = isinstance(f, Exists)

        def quantifier(env):
            saved = {v: env[v] for v in names if v in env}
            result = not want
            for combo in itertools.product(universe, repeat=len(names)):
                env.update(zip(names, combo))
                if body(env) == want:
                    result = want
                    break
            for v in names:
                env.pop(v, None)
            env.update(saved)
            return result
        return quantifier
    raise TypeError(f"not a formula: {f!r}")


def evaluate(M: Structure, f: Formula, assignment: Optional[Mapping[str, Any]] = None) -> bool:
    """``M |= f[assignment]``."""
    problem = M.signature.admits(f)
    if problem:
        raise EvaluationError(f"signature mismatch: {problem}")
    env = dict(assignment or {})
    missing = free_vars(f) - set(env)
    if missing:
        raise EvaluationError(f"free variables without values: {sorted(missing)}")
    return compile_formula(f, M)(env)


def satisfying(M: Structure, f: Formula, variables: Sequence[str],
               assignment: Optional[Mapping[str, Any]] = None) -> list[tuple]:
    """All tuples of universe elements for ``variables`` making ``f`` true."""
    problem = M.signature.admits(f)
    if problem:
        raise EvaluationError(f"signature mismatch: {problem}")
    env = dict(assignment or {})
    missing = free_vars(f) - set(env) - set(variables)
    if missing:
        raise EvaluationError(f"free variables without values: {sorted(missing)}")
    test = compile_formula(f, M)
    out = []
    for combo in itertools.product(M.universe(), repeat=len(variables)):
        env.update(zip(variables, combo))
        if test(env):
            out.append(combo)
    return out


# text format for finite structures

def format_structure(M: FiniteStructure) -> str:
    lines = [f"universe {M.size}"]
    for name in sorted(M.relations):
        lines.append(f"relation {name} {M.signature.rel[name]}")
        lines.extend(" ".join(map(str, t)) for t in sorted(M.relations[name]))
    for name in sorted(M.functions):
        arity = M.signature.func[name]
        table = M.functions[name]
        if arity == 0:
            lines.append(f"constant {name} {table[()]}")
            continue
        lines.append(f"function {name} {arity}")
        lines.extend(" ".join(map(str, k + (v,))) for k, v in sorted(table.items()))
    return "\n".join(lines) + "\n"


def parse_structure(text: str) -> FiniteStructure:
    """Inverse of :func:`format_structure`; ``%`` starts a comment."""
    size = None
    rels: dict[str, list] = {}
    funcs: dict[str, dict] = {}
    arities: dict[str, int] = {}
    current = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("%", 1)[0].strip()
        if not line:
            continue
        words = line.split()
        try:
            if words[0] == "universe":
                size = int(words[1])
            elif words[0] == "relation":
                name, arity = words[1], int(words[2])
                rels[name], arities[name] = [], arity
                current = ("relation", name, arity)
            elif words[0] == "function":
                name, arity = words[1], int(words[2])
                funcs[name] = {}
                current = ("function", name, arity)
            elif words[0] == "constant":
                funcs[words[1]] = {(): int(words[2])}
                current = None
            else:
                if current is None:
                    raise ValueError("table row outside a block")
                kind, name, arity = current
                values = tuple(int(w) for w in words)
                if kind == "relation":
                    if len(values) != arity:
                        raise ValueError(f"expected {arity} entries")
                    rels[name].append(values)
                else:
                    if len(values) != arity + 1:
                        raise ValueError(f"expected {arity + 1} entries")
                    funcs[name][values[:-1]] = values[-1]
        except (IndexError, ValueError) as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
    if size is None:
        raise ValueError("missing 'universe' line")
    return FiniteStructure.build(size, rels, funcs, arities)
