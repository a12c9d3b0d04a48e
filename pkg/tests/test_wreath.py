from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from plthompson.constructions import make_bump, make_generators, thompson_generators
from plthompson.numbers import THOMPSON
from plthompson.plmaps import PLMap, compose, conjugate, power, support
from plthompson.wreath import (A, B, IDENTITY, WreathElement, centralizer_check_ba_n, embed,
                               four_squares, in_H_coset_of_centralizer, is_pronic_of,
                               mul_from_add_div, w_commutator, w_from_word, w_inverse, w_multiply,
                               w_power, wreath_decompose)

from conftest import wreath_elements

GENS = make_generators(THOMPSON, Fraction(1, 2))
ONE = PLMap.identity(THOMPSON)


def b_(k, e=1):
    return WreathElement.make(0, {k: e})


def test_word_examples():
    assert w_from_word("a⁻¹ b a") == b_(1)
    assert w_from_word("a^-1 b a") == w_from_word("A b a") == b_(1)
    assert w_from_word("") == IDENTITY
    assert w_commutator(b_(0), b_(1)) == IDENTITY
    with pytest.raises(ValueError):
        w_from_word("a c")


def test_shift_direction():
    # a^m b_k a^-m = b_{k-m}
    for m in (-2, 1, 3):
        for k in (-1, 0, 4):
            assert w_multiply(w_multiply(w_power(A, m), b_(k)), w_power(A, -m)) == b_(k - m)


def test_string_form():
    assert str(WreathElement.make(2, {0: 1, -1: -3})) == "a^2 | {-1: -3, 0: 1}"
    assert str(A) == "a^1 | {}"


@given(wreath_elements(), wreath_elements(), wreath_elements())
def test_group_laws(u, v, w):
    assert w_multiply(w_multiply(u, v), w) == w_multiply(u, w_multiply(v, w))
    assert w_multiply(u, w_inverse(u)) == IDENTITY == w_multiply(w_inverse(u), u)
    assert w_multiply(IDENTITY, u) == u


@given(wreath_elements(), st.integers(-4, 4))
def test_power_matches_repeated_product(u, m):
    expected = IDENTITY
    step = u if m >= 0 else w_inverse(u)
    for _ in range(abs(m)):
        expected = w_multiply(expected, step)
    assert w_power(u, m) == expected


def test_embed_examples():
    assert embed(IDENTITY, GENS) == ONE
    assert list(support(embed(B, GENS))) == [(GENS.alpha(0), GENS.alpha(1))]
    for k in range(-3, 4):
        assert list(support(embed(b_(k), GENS))) == [(GENS.alpha(k), GENS.alpha(k + 1))]
        assert embed(b_(k), GENS) == conjugate(GENS.b, power(GENS.a, k))


@given(wreath_elements(), wreath_elements())
def test_embed_is_a_homomorphism(u, v):
    assert embed(w_multiply(u, v), GENS) == compose(embed(u, GENS), embed(v, GENS))


@given(wreath_elements())
def test_round_trip_and_injectivity(u):
    x = embed(u, GENS)
    assert wreath_decompose(x, GENS) == u
    assert (x == ONE) == u.is_identity()


def test_words_equal_in_the_group_embed_equally():
    u = w_from_word("a b A b")
    v = w_multiply(w_multiply(w_power(A, 1), B), w_multiply(w_power(A, -1), B))
    assert u == v == w_from_word("b^1 a^1 b a^-1 A a") and embed(u, GENS) == embed(v, GENS)
    assert u == b_(-1) * B


def test_decompose_generators_and_non_members():
    assert wreath_decompose(GENS.a, GENS) == A
    assert wreath_decompose(GENS.b, GENS) == B
    other = make_bump(THOMPSON, GENS.alpha(0), GENS.alpha(1), 4, Fraction(1, 4))
    assert wreath_decompose(other, GENS) is None
    assert wreath_decompose(make_bump(THOMPSON, Fraction(1, 8), Fraction(3, 16), 2, Fraction(1, 2)), GENS) is None


def test_decompose_with_roots():
    gens = make_generators(THOMPSON, Fraction(1, 2), s=2, t=2)
    u = WreathElement.make(-1, {0: 2, 3: -1})
    assert wreath_decompose(embed(u, gens), gens) == u
    # c is not in <a, b> when a = c^2
    assert wreath_decompose(gens.c, gens) is None


def test_thompson_instance():
    gens = thompson_generators()
    u = WreathElement.make(2, {-1: 1, 1: -2})
    assert wreath_decompose(embed(u, gens), gens) == u


def test_coset_examples():
    assert in_H_coset_of_centralizer(WreathElement.make(0, {2: 5}), 3)
    assert not in_H_coset_of_centralizer(w_power(A, 3), 2)
    assert in_H_coset_of_centralizer(w_power(A, 4), 2)


@pytest.mark.parametrize("m", range(-12, 13))
def test_divisibility_bridge(m):
    for k in range(-12, 13):
        g = WreathElement.make(k, {1: 2})
        want = k == 0 if m == 0 else k % m == 0
        assert in_H_coset_of_centralizer(g, m) == want


@pytest.mark.parametrize("m", [-3, -1, 1, 2, 5])
def test_centralizer_of_b_a_m(m):
    gen = w_multiply(B, w_power(A, m))
    for j in range(-3, 4):
        assert centralizer_check_ba_n(w_power(gen, j), m)
    assert not centralizer_check_ba_n(B, m)
    assert not centralizer_check_ba_n(A, m) or m == 0


def test_centralizer_is_cyclic_on_a_box():
    # every element commuting with b a^m in a bounded box is a power of b a^m
    m = 1
    gen = w_multiply(B, A)
    powers = {w_power(gen, j) for j in range(-3, 4)}
    for shift in range(-3, 4):
        for e0 in range(-2, 3):
            for e1 in range(-2, 3):
                for e2 in range(-2, 3):
                    g = WreathElement.make(shift, {-1: e2, 0: e0, 1: e1})
                    if centralizer_check_ba_n(g, m):
                        assert g in powers
    with pytest.raises(ValueError):
        centralizer_check_ba_n(B, 0)


def test_four_squares():
    assert four_squares(0) == (0, 0, 0, 0)
    assert sorted(x * x for x in four_squares(7)) == [1, 1, 1, 4]
    for k in range(0, 2001):
        assert sum(v * v for v in four_squares(k)) == k


def test_multiplication_from_addition_and_divisibility():
    assert mul_from_add_div(3, 4) == 12
    assert mul_from_add_div(5, 0) == 0
    assert (2 * 12 - 3) % (2 * 3 + 1) == 0
    assert is_pronic_of(12, 3) and not is_pronic_of(13, 3) and not is_pronic_of(6, 3)


@given(st.integers(-15, 15), st.integers(-15, 15))
def test_multiplication_matches(k, l):
    assert mul_from_add_div(k, l) == k * l


def test_pronic_search_radius():
    with pytest.raises(ArithmeticError):
        mul_from_add_div(40, 40, radius=10)
