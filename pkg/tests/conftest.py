import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from plthompson.numbers import THOMPSON, GroupContext
from plthompson.sampling import random_F, random_F_in, random_wreath

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

contexts = st.sampled_from([THOMPSON, GroupContext(3), GroupContext(2, Fraction(3, 2)),
                            GroupContext(6, Fraction(1, 6))])


@st.composite
def maps(draw, ctx=None, max_leaves=8):
    ctx = ctx if ctx is not None else draw(contexts)
    seed = draw(st.integers(0, 2 ** 32))
    return random_F(ctx, random.Random(seed), max_leaves)


@st.composite
def map_pairs(draw, max_leaves=8):
    ctx = draw(contexts)
    return draw(maps(ctx, max_leaves)), draw(maps(ctx, max_leaves))


@st.composite
def inner_maps(draw, lo=Fraction(1, 4), hi=Fraction(3, 4)):
    seed = draw(st.integers(0, 2 ** 32))
    return random_F_in(THOMPSON, lo, hi, random.Random(seed))


@st.composite
def wreath_elements(draw):
    return random_wreath(random.Random(draw(st.integers(0, 2 ** 32))))


@pytest.fixture
def rng():
    return random.Random(12345)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
