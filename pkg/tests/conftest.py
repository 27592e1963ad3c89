import numpy as np
import pytest
from hypothesis import strategies as st

from hilbertball.geometry import BallPoint


def cgauss(rng, shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def random_point(rng, dim, max_norm=0.9):
    g = cgauss(rng, dim)
    g = g / np.linalg.norm(g)
    # radius ~ uniform volume element, pushed toward the rim a little
    r = max_norm * rng.uniform() ** (1.0 / (2 * dim))
    return BallPoint(r * g)


@pytest.fixture
def rng():
    return np.random.default_rng(20260822)


def finite(lo, hi):
    return st.floats(min_value=lo, max_value=hi, allow_nan=False, allow_infinity=False)


@st.composite
def ball_vectors(draw, dim=3, max_norm=0.9):
    re = draw(st.lists(finite(-1.0, 1.0), min_size=dim, max_size=dim))
    im = draw(st.lists(finite(-1.0, 1.0), min_size=dim, max_size=dim))
    v = np.asarray(re, dtype=float) + 1j * np.asarray(im, dtype=float)
    n = float(np.linalg.norm(v))
    scale = draw(finite(0.0, max_norm))
    if n > 0.0:
        v = v * (scale / n)
    else:
        v = np.zeros(dim, dtype=complex)
    return v


@st.composite
def complex_matrices(draw, dim=3, scale=2.0):
    re = draw(
        st.lists(
            st.lists(finite(-scale, scale), min_size=dim, max_size=dim),
            min_size=dim,
            max_size=dim,
        )
    )
    im = draw(
        st.lists(
            st.lists(finite(-scale, scale), min_size=dim, max_size=dim),
            min_size=dim,
            max_size=dim,
        )
    )
    return np.asarray(re, dtype=float) + 1j * np.asarray(im, dtype=float)
