import os
import random
import sys

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, os.path.dirname(__file__))

from smithmult.kernel import IntMat, det_exact  # noqa: E402

settings.register_profile(
    "default", max_examples=60, deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

# acceptance lines collected during the run, echoed in the terminal summary
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def random_matrix(rng, n, m=None, lo=-99, hi=99):
    m = n if m is None else m
    return IntMat([[rng.randint(lo, hi) for _ in range(m)] for _ in range(n)])


def random_nonsingular(rng, n, lo=-99, hi=99):
    while True:
        a = random_matrix(rng, n, lo=lo, hi=hi)
        if det_exact(a):
            return a


@pytest.fixture
def rng():
    return random.Random(20240601)


@st.composite
def nonsingular_matrices(draw, min_n=1, max_n=5, bound=30):
    n = draw(st.integers(min_n, max_n))
    rows = draw(st.lists(
        st.lists(st.integers(-bound, bound), min_size=n, max_size=n),
        min_size=n, max_size=n,
    ))
    a = IntMat(rows)
    from hypothesis import assume

    assume(det_exact(a) != 0)
    return a
