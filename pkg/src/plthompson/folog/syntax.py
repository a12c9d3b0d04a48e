"""First-order terms and formulas, with a text grammar.

Grammar (loosest binding first)::

    formula := imp ('<->' imp)*
    imp     := disj ('->' imp)?             right associative
    disj    := conj ('|' conj)*
    conj    := unary ('&' unary)*
    unary   := '~' unary | ('forall'|'exists') var (',' var)* unary
             | 'true' | 'false' | '(' formula ')' | atom
    atom    := NAME '(' terms ')'            relation atom
             | term ('=' | '!=') term
    term    := factor ('*' factor)*         parsed as mul(.,.)
    factor  := primary ('^' ['-'] INT)*     x^-1 is inv(x), x^k repeats mul
    primary := NAME '(' terms ')' | NAME | '#' INT | '(' term ')'

Unicode spellings ¬ ∧ ∨ → ↔ ∀ ∃ ≠ are accepted.  A bare name is a variable
unless it is listed among the parser's constants; ``c()`` always denotes a
constant.  ``#k`` names the k-th element of a structure (used for parameters).
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Optional, Union


# terms

@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Elem:
    index: int


@dataclass(frozen=True)
class Func:
    name: str
    args: tuple = ()


Term = Union[Var, Elem, Func]


# formulas

@dataclass(frozen=True)
class Truth:
    value: bool


@dataclass(frozen=True)
class Eq:
    left: Term
    right: Term


@dataclass(frozen=True)
class Rel:
    name: str
    args: tuple = ()


@dataclass(frozen=True)
class Not:
    body: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Implies:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Iff:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Forall:
    vars: tuple
    body: "Formula"


@dataclass(frozen=True)
class Exists:
    vars: tuple
    body: "Formula"


Formula = Union[Truth, Eq, Rel, Not, And, Or, Implies, Iff, Forall, Exists]
BINARY = (And, Or, Implies, Iff)
QUANTIFIERS = (Forall, Exists)

MUL, INV, UNIT = "mul", "inv", "e"


def conj(parts: Iterable[Formula]) -> Formula:
    """Left-nested conjunction; ``true`` conjuncts are dropped."""
    parts = [p for p in parts if p != Truth(True)]
    if not parts:
        return Truth(True)
    out = parts[0]
    for p in parts[1:]:
        out = And(out, p)
    return out


def disj(parts: Iterable[Formula]) -> Formula:
    parts = list(parts)
    if not parts:
        return Truth(False)
    out = parts[0]
    for p in parts[1:]:
        out = Or(out, p)
    return out


def term_power(t: Term, k: int) -> Term:
    """``t^k`` spelled with mul, inv and the unit."""
    if k == 0:
        return Func(UNIT)
    if k < 0:
        return Func(INV, (term_power(t, -k),))
    out = t
    for _ in range(k - 1):
        out = Func(MUL, (out, t))
    return out


# traversal helpers

def term_vars(t: Term) -> Iterator[str]:
    if isinstance(t, Var):
        yield t.name
    elif isinstance(t, Func):
        for a in t.args:
            yield from term_vars(a)


def free_vars(f: Formula) -> frozenset[str]:
    if isinstance(f, Truth):
        return frozenset()
    if isinstance(f, Eq):
        return frozenset(term_vars(f.left)) | frozenset(term_vars(f.right))
    if isinstance(f, Rel):
        return frozenset(v for a in f.args for v in term_vars(a))
    if isinstance(f, Not):
        return free_vars(f.body)
    if isinstance(f, BINARY):
        return free_vars(f.left) | free_vars(f.right)
    if isinstance(f, QUANTIFIERS):
        return free_vars(f.body) - frozenset(f.vars)
    raise TypeError(f"not a formula: {f!r}")


def all_names(f: Formula) -> set[str]:
    """Every variable name occurring in ``f``, bound or free."""
    out: set[str] = set()
    for node in walk(f):
        if isinstance(node, QUANTIFIERS):
            out.update(node.vars)
        elif isinstance(node, Eq):
            out.update(term_vars(node.left))
            out.update(term_vars(node.right))
        elif isinstance(node, Rel):
            for a in node.args:
                out.update(term_vars(a))
    return out


def walk(f: Formula) -> Iterator[Formula]:
    yield f
    if isinstance(f, Not):
        yield from walk(f.body)
    elif isinstance(f, BINARY):
        yield from walk(f.left)
        yield from walk(f.right)
    elif isinstance(f, QUANTIFIERS):
        yield from walk(f.body)


def walk_terms(t: Term) -> Iterator[Term]:
    yield t
    if isinstance(t, Func):
        for a in t.args:
            yield from walk_terms(a)


def atoms_terms(f: Formula) -> Iterator[Term]:
    for node in walk(f):
        if isinstance(node, Eq):
            yield from walk_terms(node.left)
            yield from walk_terms(node.right)
        elif isinstance(node, Rel):
            for a in node.args:
                yield from walk_terms(a)


def symbols(f: Formula) -> tuple[dict[str, int], dict[str, int]]:
    """``(relations, functions)`` used in ``f``, each mapped to its arity."""
    rels: dict[str, int] = {}
    funcs: dict[str, int] = {}
    for node in walk(f):
        if isinstance(node, Rel):
            _record(rels, node.name, len(node.args))
    for t in atoms_terms(f):
        if isinstance(t, Func):
            _record(funcs, t.name, len(t.args))
    return rels, funcs


def _record(table: dict[str, int], name: str, arity: int) -> None:
    if table.setdefault(name, arity) != arity:
        raise ValueError(f"symbol {name} used with arities {table[name]} and {arity}")


def fresh_name(base: str, taken: set[str]) -> str:
    """``base`` itself when free, else ``base`` with a numeric suffix; the
    result is added to ``taken``."""
    name = base
    for i in itertools.count(1):
        if name not in taken:
            break
        name = f"{base}_{i}"
    taken.add(name)
    return name


def substitute_term(t: Term, mapping: Mapping[str, Term]) -> Term:
    if isinstance(t, Var):
        return mapping.get(t.name, t)
    if isinstance(t, Func):
        return Func(t.name, tuple(substitute_term(a, mapping) for a in t.args))
    return t


def substitute(f: Formula, mapping: Mapping[str, Term], taken: Optional[set[str]] = None) -> Formula:
    """Replace free variables by terms, renaming bound variables that would
    capture a variable of an inserted term."""
    if taken is None:
        taken = all_names(f) | {v for t in mapping.values() for v in term_vars(t)}
    mapping = {k: v for k, v in mapping.items() if k in free_vars(f)}
    if not mapping:
        return f
    if isinstance(f, Eq):
        return Eq(substitute_term(f.left, mapping), substitute_term(f.right, mapping))
    if isinstance(f, Rel):
        return Rel(f.name, tuple(substitute_term(a, mapping) for a in f.args))
    if isinstance(f, Not):
        return Not(substitute(f.body, mapping, taken))
    if isinstance(f, BINARY):
        return type(f)(substitute(f.left, mapping, taken), substitute(f.right, mapping, taken))
    if isinstance(f, QUANTIFIERS):
        inserted = {v for t in mapping.values() for v in term_vars(t)}
        inner = dict(mapping)
        new_vars = []
        for v in f.vars:
            inner.pop(v, None)
        for v in f.vars:
            if v in inserted:
                w = fresh_name(v, taken)
                inner[v] = Var(w)
                new_vars.append(w)
            else:
                new_vars.append(v)
        return type(f)(tuple(new_vars), substitute(f.body, inner, taken))
    return f


def alpha_equivalent(f: Formula, g: Formula) -> bool:
    """Equality up to renaming of bound variables (quantifier blocks must
    have equal lengths)."""
    return _alpha(f, g, {}, {}, [0])


def _alpha(f, g, bf: dict, bg: dict, depth: list) -> bool:
    if type(f) is not type(g):
        return False
    if isinstance(f, Truth):
        return f.value == g.value
    if isinstance(f, Eq):
        return _alpha_term(f.left, g.left, bf, bg) and _alpha_term(f.right, g.right, bf, bg)
    if isinstance(f, Rel):
        return (f.name == g.name and len(f.args) == len(g.args)
                and all(_alpha_term(a, b, bf, bg) for a, b in zip(f.args, g.args)))
    if isinstance(f, Not):
        return _alpha(f.body, g.body, bf, bg, depth)
    if isinstance(f, BINARY):
        return _alpha(f.left, g.left, bf, bg, depth) and _alpha(f.right, g.right, bf, bg, depth)
    if isinstance(f, QUANTIFIERS):
        if len(f.vars) != len(g.vars):
            return False
        bf2, bg2 = dict(bf), dict(bg)
        for v, w in zip(f.vars, g.vars):
            depth[0] += 1
            bf2[v] = bg2[w] = depth[0]
        return _alpha(f.body, g.body, bf2, bg2, depth)
    raise TypeError(f"not a formula: {f!r}")


def _alpha_term(s, t, bf, bg) -> bool:
    if type(s) is not type(t):
        return False
    if isinstance(s, Var):
        if s.name in bf or t.name in bg:
            return bf.get(s.name) == bg.get(t.name)
        return s.name == t.name
    if isinstance(s, Elem):
        return s.index == t.index
    return (s.name == t.name and len(s.args) == len(t.args)
            and all(_alpha_term(a, b, bf, bg) for a, b in zip(s.args, t.args)))


# rendering

_PREC = {Iff: 1, Implies: 2, Or: 3, And: 4}
_OPS = {Iff: "<->", Implies: "->", Or: "|", And: "&"}


def render_term(t: Term) -> str:
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Elem):
        return f"#{t.index}"
    if t.name == MUL and len(t.args) == 2:
        left, right = t.args
        rs = render_term(right)
        if isinstance(right, Func) and right.name == MUL and len(right.args) == 2:
            rs = f"({rs})"
        return f"{render_term(left)} * {rs}"
    if t.name == INV and len(t.args) == 1:
        inner = render_term(t.args[0])
        if isinstance(t.args[0], Func) and t.args[0].name == MUL and len(t.args[0].args) == 2:
            inner = f"({inner})"
        return f"{inner}^-1"
    return f"{t.name}({', '.join(render_term(a) for a in t.args)})"


def render(f: Formula) -> str:
    if isinstance(f, Truth):
        return "true" if f.value else "false"
    if isinstance(f, Eq):
        return f"{render_term(f.left)} = {render_term(f.right)}"
    if isinstance(f, Rel):
        return f"{f.name}({', '.join(render_term(a) for a in f.args)})"
    if isinstance(f, Not):
        body = f.body
        inner = render(body)
        if isinstance(body, (Eq,) + BINARY):
            inner = f"({inner})"
        return f"~{inner}"
    if isinstance(f, QUANTIFIERS):
        word = "forall" if isinstance(f, Forall) else "exists"
        body = render(f.body)
        if not isinstance(f.body, QUANTIFIERS):
            body = f"({body})"
        return f"{word} {', '.join(f.vars)} {body}"
    p = _PREC[type(f)]
    right_assoc = isinstance(f, Implies)
    left = _wrap(f.left, p + 1 if right_assoc else p)
    right = _wrap(f.right, p if right_assoc else p + 1)
    return f"{left} {_OPS[type(f)]} {right}"


def _wrap(f: Formula, need: int) -> str:
    text = render(f)
    if isinstance(f, BINARY) and _PREC[type(f)] < need:
        return f"({text})"
    return text


# parsing

class FormulaSyntaxError(ValueError):
    def __init__(self, message: str, offset: int, text: str):
        super().__init__(f"{message} at offset {offset}: {text[:offset]}<here>{text[offset:]}")
        self.offset = offset


_TOKEN_RE = re.compile(r"""
    (?P<ws>\s+)
  | (?P<arrow><->|->|↔|→)
  | (?P<neq>!=|≠)
  | (?P<int>\d+)
  | (?P<name>[A-Za-z_][A-Za-z0-9_']*)
  | (?P<sym>[()=,*^#&|~!¬∧∨∀∃-])
""", re.VERBOSE)

_CANON = {"↔": "<->", "→": "->", "≠": "!=", "¬": "~", "!": "~", "∧": "&", "∨": "|",
          "∀": "forall", "∃": "exists"}
KEYWORDS = {"forall", "exists", "true", "false"}


@dataclass
class _Tok:
    kind: str
    text: str
    pos: int


def tokenize(text: str) -> list[_Tok]:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise FormulaSyntaxError(f"unexpected character {text[pos]!r}", pos, text)
        kind = m.lastgroup
        value = m.group()
        if kind != "ws":
            value = _CANON.get(value, value)
            if kind == "name" and value in KEYWORDS:
                kind = "kw"
            elif value in ("forall", "exists"):
                kind = "kw"
            toks.append(_Tok(kind, value, pos))
        pos = m.end()
    toks.append(_Tok("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, constants: Iterable[str]):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0
        self.constants = set(constants)

    # token plumbing
    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def at(self, *texts: str) -> bool:
        return self.tok.kind != "end" and self.tok.text in texts

    def error(self, message: str, tok: Optional[_Tok] = None):
        tok = tok or self.tok
        return FormulaSyntaxError(message, tok.pos, self.text)

    def expect(self, text: str) -> _Tok:
        if not self.at(text):
            found = self.tok.text or "end of input"
            raise self.error(f"expected {text!r}, found {found!r}")
        tok = self.tok
        self.i += 1
        return tok

    def name(self) -> str:
        if self.tok.kind != "name":
            raise self.error(f"expected a name, found {self.tok.text or 'end of input'!r}")
        tok = self.tok
        self.i += 1
        return tok.text

    # formulas
    def formula(self) -> Formula:
        out = self.implication()
        while self.at("<->"):
            self.i += 1
            out = Iff(out, self.implication())
        return out

    def implication(self) -> Formula:
        left = self.disjunction()
        if self.at("->"):
            self.i += 1
            return Implies(left, self.implication())
        return left

    def disjunction(self) -> Formula:
        out = self.conjunction()
        while self.at("|"):
            self.i += 1
            out = Or(out, self.conjunction())
        return out

    def conjunction(self) -> Formula:
        out = self.unary()
        while self.at("&"):
            self.i += 1
            out = And(out, self.unary())
        return out

    def unary(self) -> Formula:
        tok = self.tok
        if self.at("~"):
            self.i += 1
            return Not(self.unary())
        if tok.kind == "kw" and tok.text in ("forall", "exists"):
            self.i += 1
            names = [self.name()]
            while self.at(","):
                self.i += 1
                names.append(self.name())
            body = self.unary()
            cls = Forall if tok.text == "forall" else Exists
            return cls(tuple(names), body)
        if tok.kind == "kw" and tok.text in ("true", "false"):
            self.i += 1
            return Truth(tok.text == "true")
        if self.at("("):
            start = self.i
            try:
                self.i += 1
                inner = self.formula()
                self.expect(")")
                if not self.at("=", "!=", "*", "^"):
                    return inner
            except FormulaSyntaxError as exc:
                first_error = exc
                self.i = start
                try:
                    return self.atom()
                except FormulaSyntaxError as second:
                    raise max(first_error, second, key=lambda e: e.offset) from None
            self.i = start
        return self.atom()

    def atom(self) -> Formula:
        tok = self.tok
        if tok.kind == "name" and self.toks[self.i + 1].text == "(" and tok.text not in self.constants:
            start = self.i
            self.i += 1
            args = self.arguments()
            if not self.at("=", "!=", "*", "^"):
                return Rel(tok.text, args)
            self.i = start
        left = self.term()
        if self.at("="):
            self.i += 1
            return Eq(left, self.term())
        if self.at("!="):
            self.i += 1
            return Not(Eq(left, self.term()))
        raise self.error(f"expected '=' after term, found {self.tok.text or 'end of input'!r}")

    def arguments(self) -> tuple:
        self.expect("(")
        args = []
        if not self.at(")"):
            args.append(self.term())
            while self.at(","):
                self.i += 1
                args.append(self.term())
        self.expect(")")
        return tuple(args)

    # terms
    def term(self) -> Term:
        out = self.factor()
        while self.at("*"):
            self.i += 1
            out = Func(MUL, (out, self.factor()))
        return out

    def factor(self) -> Term:
        out = self.primary()
        while self.at("^"):
            self.i += 1
            sign = 1
            if self.at("-"):
                self.i += 1
                sign = -1
            if self.tok.kind != "int":
                raise self.error("expected an integer exponent")
            k = sign * int(self.tok.text)
            self.i += 1
            out = term_power(out, k)
        return out

    def primary(self) -> Term:
        tok = self.tok
        if self.at("#"):
            self.i += 1
            if self.tok.kind != "int":
                raise self.error("expected an element index after '#'")
            k = int(self.tok.text)
            self.i += 1
            return Elem(k)
        if self.at("("):
            self.i += 1
            inner = self.term()
            self.expect(")")
            return inner
        if tok.kind == "name":
            self.i += 1
            if self.at("("):
                return Func(tok.text, self.arguments())
            if tok.text in self.constants:
                return Func(tok.text)
            return Var(tok.text)
        raise self.error(f"expected a term, found {tok.text or 'end of input'!r}")


def parse(text: str, constants: Iterable[str] = ()) -> Formula:
    p = _Parser(text, constants)
    f = p.formula()
    if p.tok.kind != "end":
        raise p.error(f"unexpected {p.tok.text!r}")
    return f


def parse_term(text: str, constants: Iterable[str] = ()) -> Term:
    p = _Parser(text, constants)
    t = p.term()
    if p.tok.kind != "end":
        raise p.error(f"unexpected {p.tok.text!r}")
    return t
