import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

settings.register_profile(
    "default",
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

ACCEPTANCE = {}

finite = st.floats(min_value=-3.0, max_value=3.0, allow_nan=False, allow_infinity=False)


@st.composite
def complex_matrices(draw, d=None, dmin=1, dmax=4):
    if d is None:
        d = draw(st.integers(dmin, dmax))
    re = draw(st.lists(finite, min_size=d * d, max_size=d * d))
    im = draw(st.lists(finite, min_size=d * d, max_size=d * d))
    return (np.array(re) + 1j * np.array(im)).reshape(d, d)


@st.composite
def complex_vectors(draw, d):
    re = draw(st.lists(finite, min_size=d, max_size=d))
    im = draw(st.lists(finite, min_size=d, max_size=d))
    return np.array(re) + 1j * np.array(im)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[key])
