import math

import numpy as np
import pytest
from hypothesis import strategies as st

from quantum_pd import PayoffTable

PD = PayoffTable(3, 1, 5, 0)
EQUAL = PayoffTable(3, 2, 5, 0)
WIDE = PayoffTable(3, 2, 4, 0)

# outcome lines for the acceptance criteria, printed in the terminal summary
ACCEPTANCE = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for line in ACCEPTANCE:
        terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return np.random.default_rng(20021)


def random_unit(rng, dim):
    v = rng.normal(size=dim)
    return v / np.linalg.norm(v)


def random_table(rng):
    while True:
        s, p, r, t = np.sort(rng.uniform(-5, 10, size=4))
        if min(p - s, r - p, t - r) > 1e-3:
            return PayoffTable(r, p, t, s)


def unit_vectors(dim):
    comp = st.floats(-1, 1, allow_nan=False)
    return (st.lists(comp, min_size=dim, max_size=dim)
            .filter(lambda v: sum(c * c for c in v) > 1e-3)
            .map(lambda v: np.array(v) / np.linalg.norm(v)))


@st.composite
def tables(draw):
    s = draw(st.floats(-10, 10))
    gaps = [draw(st.floats(0.01, 10)) for _ in range(3)]
    p = s + gaps[0]
    r = p + gaps[1]
    t = r + gaps[2]
    return PayoffTable(r, p, t, s)


gammas = st.floats(0, math.pi / 2)
