import cmath

import numpy as np
import pytest
from hypothesis import strategies as st

from harmana.core import HarmonicSeries
from harmana.verify import random_series

Z2_ZBAR = HarmonicSeries((0, 0, 1), (1,), name="z^2+conj(z)")
Z = HarmonicSeries((0, 1), name="z")


def complex_coeffs(max_len):
    c = st.complex_numbers(max_magnitude=3, allow_nan=False, allow_infinity=False)
    # squares of magnitudes below 1e-150 underflow; treat them as zero
    c = c.map(lambda w: w if abs(w) > 1e-100 else 0j)
    return st.lists(c, min_size=0, max_size=max_len)


@st.composite
def series(draw, max_degree=6):
    a = draw(complex_coeffs(max_degree + 1))
    b = draw(complex_coeffs(max_degree))
    return HarmonicSeries(tuple(a), tuple(b))


@st.composite
def disk_points(draw, r_max=0.999):
    r = draw(st.floats(0, r_max))
    t = draw(st.floats(0, 2 * np.pi))
    return r * cmath.exp(1j * t)


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture
def corpus(rng):
    return [random_series(rng) for _ in range(40)]
