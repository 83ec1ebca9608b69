from fractions import Fraction

import pytest
from hypothesis import strategies as st

from fockbench import FockVector, GaussianRational, Workspace
from fockbench.fock import occupation_indices

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def ws2():
    return Workspace(2, 4)


@pytest.fixture
def ws3():
    return Workspace(3, 6)


rationals = st.builds(Fraction, st.integers(-12, 12), st.integers(1, 12))
gaussian_rationals = st.builds(GaussianRational, rationals, rationals)


def one_particle_vectors(ws):
    return st.lists(gaussian_rationals, min_size=ws.d, max_size=ws.d).map(ws.one_particle)


def fock_vectors(ws, max_grade=None, max_terms=6):
    top = ws.n_max if max_grade is None else max_grade
    pool = [a for n in range(top + 1) for a in occupation_indices(ws.d, n)]
    return st.dictionaries(st.sampled_from(pool), gaussian_rationals,
                           max_size=max_terms).map(lambda t: FockVector(ws, t))


def homogeneous_vectors(ws, n, max_terms=6):
    pool = list(occupation_indices(ws.d, n))
    return st.dictionaries(st.sampled_from(pool), gaussian_rationals, min_size=1,
                           max_size=max_terms).map(lambda t: FockVector(ws, t))


def frac(p, q=1):
    return Fraction(p, q)
