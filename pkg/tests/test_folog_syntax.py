import pytest
from hypothesis import given, strategies as st

from plthompson.folog import (And, Elem, Eq, Exists, Forall, FormulaSyntaxError, Func, Iff,
                              Implies, Not, Or, Rel, Truth, Var, alpha_equivalent, free_vars,
                              parse, parse_term, render, substitute)
from plthompson.folog.syntax import INV, MUL, conj, fresh_name, render_term, symbols

NAMES = ["x", "y", "z", "y1", "w_2"]

terms = st.recursive(
    st.one_of(st.sampled_from(NAMES).map(Var), st.integers(0, 5).map(Elem)),
    lambda sub: st.one_of(
        st.builds(lambda a, b: Func(MUL, (a, b)), sub, sub),
        sub.map(lambda a: Func(INV, (a,))),
        st.builds(lambda n, args: Func(n, tuple(args)), st.sampled_from(["f", "g", "c"]),
                  st.lists(sub, max_size=2)),
    ),
    max_leaves=6,
)

atoms = st.one_of(
    st.builds(Eq, terms, terms),
    st.builds(lambda n, args: Rel(n, tuple(args)), st.sampled_from(["R", "S", "P'"]),
              st.lists(terms, min_size=0, max_size=3)),
    st.booleans().map(Truth),
)

formulas = st.recursive(
    atoms,
    lambda sub: st.one_of(
        sub.map(Not),
        st.builds(And, sub, sub), st.builds(Or, sub, sub),
        st.builds(Implies, sub, sub), st.builds(Iff, sub, sub),
        st.builds(lambda vs, b: Forall(tuple(vs), b), st.lists(st.sampled_from(NAMES), min_size=1, max_size=2, unique=True), sub),
        st.builds(lambda vs, b: Exists(tuple(vs), b), st.lists(st.sampled_from(NAMES), min_size=1, max_size=2, unique=True), sub),
    ),
    max_leaves=8,
)


@given(formulas)
def test_render_parse_round_trip(f):
    assert parse(render(f)) == f


@given(terms)
def test_term_round_trip(t):
    assert parse_term(render_term(t)) == t


def test_example_sentence():
    f = parse("forall y1 (s(y1,y1) -> y1 = y1)")
    assert isinstance(f, Forall) and f.vars == ("y1",)
    assert f.body == Implies(Rel("s", (Var("y1"), Var("y1"))), Eq(Var("y1"), Var("y1")))


def test_precedence():
    assert parse("~a = b & P(x) | Q(x) -> R(x) <-> S(x)") == Iff(
        Implies(Or(And(Not(Eq(Var("a"), Var("b"))), Rel("P", (Var("x"),))), Rel("Q", (Var("x"),))),
                Rel("R", (Var("x"),))),
        Rel("S", (Var("x"),)))
    assert parse("P(x) -> Q(x) -> R(x)") == Implies(Rel("P", (Var("x"),)),
                                                    Implies(Rel("Q", (Var("x"),)), Rel("R", (Var("x"),))))


def test_unicode_and_ascii_agree():
    assert parse("∀x ∃y (R(x, y) ∧ ¬ x = y → P(x) ∨ x ≠ y)") == parse(
        "forall x exists y (R(x, y) & ~x = y -> P(x) | x != y)")


def test_terms_with_powers_and_constants():
    f = parse("x * a^2 = b^-1 * x", constants=["a", "b"])
    a, b = Func("a"), Func("b")
    assert f == Eq(Func(MUL, (Var("x"), Func(MUL, (a, a)))), Func(MUL, (Func(INV, (b,)), Var("x"))))
    assert parse("(x) = y") == Eq(Var("x"), Var("y"))
    assert parse("(x * y)^-1 = e()") == Eq(Func(INV, (Func(MUL, (Var("x"), Var("y"))),)), Func("e"))


@pytest.mark.parametrize("text,offset", [
    ("forall x (R(x, x)", 17),
    ("R(x,, y)", 4),
    ("x = ", 4),
    ("P(x) &", 6),
    ("x $ y", 2),
])
def test_syntax_errors_report_offsets(text, offset):
    with pytest.raises(FormulaSyntaxError) as info:
        parse(text)
    assert info.value.offset == offset


def test_free_variables():
    f = parse("forall x (R(x, y)) & exists y (P(y) & z = #1)")
    assert free_vars(f) == {"y", "z"}


def test_substitution_avoids_capture():
    f = parse("exists y (R(x, y))")
    g = substitute(f, {"x": Var("y")})
    assert free_vars(g) == {"y"}
    assert alpha_equivalent(g, parse("exists u (R(y, u))"))
    assert not alpha_equivalent(g, parse("exists y (R(y, y))"))


def test_alpha_equivalence():
    assert alpha_equivalent(parse("forall a, b (R(a, b))"), parse("forall c, d (R(c, d))"))
    assert not alpha_equivalent(parse("forall a, b (R(a, b))"), parse("forall c, d (R(d, c))"))
    assert not alpha_equivalent(parse("R(a, b)"), parse("R(c, d)"))


def test_helpers():
    assert conj([]) == Truth(True)
    assert conj([Truth(True), parse("P(x)")]) == parse("P(x)")
    assert fresh_name("u", {"u", "u_1"}) == "u_2"
    rels, funcs = symbols(parse("R(f(x), c()) & g(x, x) = x"))
    assert rels == {"R": 2} and funcs == {"f": 1, "c": 0, "g": 2}
