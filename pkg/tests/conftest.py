import numpy as np
import pytest

from gowerk import reference_data as ref

_ACCEPTANCE_LINES = []


@pytest.fixture
def acceptance_report():
    """Collects one PASS/FAIL line per acceptance criterion for the summary."""
    return _ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def ne_d():
    return ref.NE_D.copy()


@pytest.fixture
def d0():
    return ref.d0()


def random_points(rng, m, dim):
    return rng.uniform(-100, 100, size=(m, dim))


def random_dissimilarity(rng, m, high=100.0):
    a = np.triu(rng.uniform(0, high, size=(m, m)), 1)
    return a + a.T


def random_svector(rng, m):
    u = rng.normal(size=m)
    return u + (1.0 - u.sum()) / m
