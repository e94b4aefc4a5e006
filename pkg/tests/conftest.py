import random

import pytest
from gmpy2 import mpq
from hypothesis import settings, strategies as st

from riordan.fps import Fps
from riordan.group import RiordanPair

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")

N = 16


def rationals(height=4, nonzero=False):
    q = st.builds(mpq, st.integers(-height, height), st.integers(1, height))
    return q.filter(bool) if nonzero else q


@st.composite
def series(draw, order=N, valuation=0, unit=False, degree=5):
    cs = [mpq(0)] * (order + 1)
    for k in range(valuation, min(order, valuation + degree) + 1):
        cs[k] = draw(rationals())
    if unit:
        cs[0] = mpq(1)
    if valuation <= order:
        cs[valuation] = cs[valuation] or draw(rationals(nonzero=True))
    return Fps(cs)


@st.composite
def pairs(draw, order=N, degree=3):
    return RiordanPair(draw(series(order, 0, degree=degree)), draw(series(order, 1, degree=degree)))


@pytest.fixture
def rng():
    return random.Random(20261016)
