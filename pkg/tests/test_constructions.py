import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from plthompson.constructions import (make_bump, make_down_bump, make_generators, squeeze,
                                      squeeze_conjugator, thompson_generators, thompson_standard)
from plthompson.numbers import THOMPSON, GroupContext, in_A, is_power_of_n
from plthompson.plmaps import (commutator, commutes, compose, inverse, is_decreasing_everywhere,
                               is_increasing_everywhere, limit_of_iterates, slope_left,
                               slope_right, support)

from plthompson.sampling import random_F

from conftest import inner_maps

H = Fraction(1, 2)
WINDOWS = [(0, 1), (Fraction(1, 4), H), (Fraction(1, 8), Fraction(7, 8)), (0, Fraction(3, 16)),
           (Fraction(5, 8), 1)]


def test_bump_matches_five_piece_partition():
    x = make_bump(THOMPSON, 0, 1, 2, H)
    src = [0, Fraction(1, 8), Fraction(3, 16), Fraction(5, 8), Fraction(7, 8), 1]
    dst = [0, Fraction(1, 4), Fraction(3, 8), Fraction(13, 16), Fraction(15, 16), 1]
    assert [x(t) for t in src] == dst
    slopes = [(d2 - d1) / (s2 - s1) for s1, s2, d1, d2 in zip(src, src[1:], dst, dst[1:])]
    assert slopes == [2, 2, 1, H, H]
    # equal-slope neighbours are merged in the stored form
    assert x.xs == (0, Fraction(3, 16), Fraction(5, 8), 1)


@pytest.mark.parametrize("window", WINDOWS)
@pytest.mark.parametrize("p", [2, 4, 8])
@pytest.mark.parametrize("q", [H, Fraction(1, 4), Fraction(1, 8)])
def test_bump_grid(window, p, q):
    a, b = window
    x = make_bump(THOMPSON, a, b, p, q)
    assert list(support(x)) == [(a, b)]
    assert slope_right(x, a) == p and slope_left(x, b) == q
    assert is_increasing_everywhere(x)
    assert all(in_A(u, THOMPSON) and in_A(v, THOMPSON) for u, v in x.breakpoints)
    assert all(is_power_of_n(m, THOMPSON) for m in x.slopes)


@pytest.mark.parametrize("n,r", [(3, 1), (6, Fraction(1, 6)), (2, Fraction(5, 2))])
def test_bump_other_groups(n, r):
    ctx = GroupContext(n, Fraction(r))
    x = make_bump(ctx, 0, ctx.r, n ** 2, Fraction(1, n))
    assert list(support(x)) == [(0, ctx.r)] and slope_right(x, 0) == n ** 2


@pytest.mark.parametrize("args", [(0, 1, 1, H), (0, 1, 2, 2), (0, 1, 3, H),
                                  (0, Fraction(1, 3), 2, H), (H, Fraction(1, 4), 2, H)])
def test_bump_rejects_bad_parameters(args):
    with pytest.raises(ValueError):
        make_bump(THOMPSON, *args)


def test_down_bump():
    y = make_down_bump(THOMPSON, 0, 1, H, 2)
    assert slope_right(y, 0) == H and slope_left(y, 1) == 2
    assert y == inverse(make_bump(THOMPSON, 0, 1, 2, H))
    assert is_decreasing_everywhere(y) and list(support(y)) == [(0, 1)]
    up = make_bump(THOMPSON, 0, Fraction(1, 4), 2, H)
    down = make_down_bump(THOMPSON, H, 1, H, 2)
    assert commutes(up, down)


def test_generators_basic():
    gens = make_generators(THOMPSON, H)
    assert gens.a == gens.c and gens.b == gens.d
    assert list(support(gens.b)) == [(H, gens.a(H))]
    ladder = [gens.alpha(k) for k in range(-20, 21)]
    assert all(u < v for u, v in zip(ladder, ladder[1:]))
    assert limit_of_iterates(gens.a, H) == 1 and limit_of_iterates(inverse(gens.a), H) == 0


def test_generators_with_roots():
    gens = make_generators(THOMPSON, Fraction(3, 8), s=2, t=3)
    assert gens.a == compose(gens.c, gens.c)
    assert gens.b == compose(compose(gens.d, gens.d), gens.d)
    assert list(support(gens.b)) == [(gens.alpha(0), gens.alpha(1))]


def test_generators_reject_bad_alpha0():
    for bad in (0, 1, Fraction(1, 3)):
        with pytest.raises(ValueError):
            make_generators(THOMPSON, bad)


def expected_alpha(k):
    return Fraction(2) ** (-1 + 2 * k) if k < 0 else 1 - Fraction(2) ** (-1 - 2 * k)


def test_thompson_ladder():
    x0, x1 = thompson_standard()
    gens = thompson_generators()
    assert gens.b == compose(compose(x1, inverse(x0)), compose(inverse(x1), x0))
    assert (gens.alpha(-1), gens.alpha(0), gens.alpha(1)) == (Fraction(1, 8), H, Fraction(7, 8))
    for k in range(-5, 6):
        assert gens.alpha(k) == expected_alpha(k)
        assert list(support(gens.b_conj(k))) == [(expected_alpha(k), expected_alpha(k + 1))]


def test_wrong_composition_order_breaks_the_ladder():
    # composing right-to-left gives a different b whose support is not ]1/2; 7/8[
    x0, x1 = thompson_standard()
    swapped = compose(compose(x0, inverse(x1)), compose(inverse(x0), x1))
    assert list(support(swapped)) != [(H, Fraction(7, 8))]


def test_x1_is_half_scale_copy():
    x0, x1 = thompson_standard()
    for t in (Fraction(i, 16) for i in range(17)):
        if t <= H:
            assert x1(t) == t
        else:
            assert x1(t) == H + x0(2 * t - 1) / 2


# squeezing

def test_squeeze_map_shape():
    sq = squeeze_conjugator(THOMPSON, Fraction(1, 4), H, Fraction(1, 8), Fraction(3, 4))
    assert sq(Fraction(1, 4)) == Fraction(1, 4) and sq(Fraction(3, 8)) == Fraction(3, 8)
    assert sq.start == Fraction(1, 4) * (1 - sq.p) and sq.start >= Fraction(1, 8)
    assert sq.end <= Fraction(3, 4)


def test_squeeze_conjugator_errors():
    with pytest.raises(ValueError, match="containment needs"):
        squeeze_conjugator(THOMPSON, Fraction(1, 4), H, Fraction(3, 16), Fraction(3, 4), p=H)
    with pytest.raises(ValueError):
        squeeze_conjugator(THOMPSON, Fraction(1, 8), H, Fraction(1, 4), Fraction(3, 4))


SQ = squeeze_conjugator(THOMPSON, Fraction(1, 4), Fraction(3, 4), Fraction(1, 8), Fraction(7, 8))


def test_squeeze_fixes_elements_inside_the_window():
    x = make_bump(THOMPSON, Fraction(5, 16), H, 2, H)
    assert squeeze(x, SQ) == x
    assert squeeze(compose(x, x), SQ) == compose(x, x)


@given(st.integers(0, 2 ** 32), st.integers(0, 2 ** 32))
def test_squeeze_is_a_homomorphism(s1, s2):
    u, v = random_F(THOMPSON, random.Random(s1)), random_F(THOMPSON, random.Random(s2))
    assert squeeze(compose(u, v), SQ) == compose(squeeze(u, SQ), squeeze(v, SQ))
    assert squeeze(commutator(u, v), SQ) == commutator(squeeze(u, SQ), squeeze(v, SQ))
    su = squeeze(u, SQ)
    assert support(su).within(Fraction(1, 8), Fraction(7, 8))
    assert list(support(su)) == [(SQ(a), SQ(b)) for a, b in support(u)]


@given(inner_maps())
def test_squeeze_identity_case(x):
    assert squeeze(x, SQ) == x
