import itertools
import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fockbench import (
    FockVector,
    GaussianRational,
    Workspace,
    WorkspaceError,
    fock_from_json,
    fock_to_json,
    grade_project,
    inner,
    monomial_inner,
    norm_sq,
    permanent_naive,
    tensor_to_occupation,
)
from fockbench.fock import occupation_indices
from fockbench.permanent import gram_matrix

from conftest import fock_vectors, gaussian_rationals, one_particle_vectors

WS = Workspace(3, 6)


def brute_product_inner(xs, ys):
    # literal sum over permutations of products of one-particle inner products
    n = len(xs)
    total = 0
    for p in itertools.permutations(range(n)):
        term = 1
        for j in range(n):
            term = term * xs[j].inner(ys[p[j]])
        total = total + term
    return total


@pytest.mark.parametrize("alpha, beta, expected", [
    ((2, 0), (2, 0), 2),
    ((0, 0), (0, 0), 1),
    ((1, 1), (1, 1), 1),
    ((2, 0), (1, 1), 0),
    ((3, 1, 2), (3, 1, 2), 12),
])
def test_monomial_inner(alpha, beta, expected):
    assert monomial_inner(alpha, beta) == expected


def test_monomial_inner_matches_gram_permanent():
    ws = Workspace(2, 4)
    e1, e2 = ws.basis(0), ws.basis(1)
    assert permanent_naive(gram_matrix([e1, e2], [e1, e2])) == monomial_inner((1, 1), (1, 1))


def test_monomial_inner_dimension_mismatch():
    with pytest.raises(WorkspaceError):
        monomial_inner((1, 0), (1, 0, 0))


def test_orthogonality_exhaustive():
    ws = Workspace(3, 4)
    indices = list(ws.indices())
    for a in indices:
        for b in indices:
            value = monomial_inner(a, b)
            assert (value == 0) == (a != b)


def test_inner_examples(ws2):
    sq = ws2.monomial((2, 0))
    assert inner(sq, sq) == 2
    assert inner(ws2.monomial((1, 0)), ws2.monomial((0, 1))) == 0
    i_e1 = ws2.monomial((1, 0), GaussianRational(0, 1))
    assert inner(i_e1, ws2.monomial((1, 0))) == GaussianRational(0, -1)


def test_norm_sq_examples(ws2):
    assert norm_sq(ws2.monomial((2, 0))) == 2
    assert norm_sq(ws2.zero()) == 0
    phi = ws2.vector({(2, 0): 1, (1, 1): 1})
    assert norm_sq(phi) == 3
    e1, e2 = ws2.basis(0), ws2.basis(1)
    oracle = brute_product_inner([e1, e1], [e1, e1]) + brute_product_inner([e1, e2], [e1, e2])
    assert norm_sq(phi) == oracle


def test_grade_project(ws2):
    phi = ws2.vector({(1, 0): 1, (2, 0): 1})
    assert grade_project(phi, 2) == ws2.monomial((2, 0))
    assert grade_project(phi, 0) == ws2.zero()
    assert grade_project(phi, 99) == ws2.zero()
    with pytest.raises(ValueError):
        grade_project(phi, -1)


@given(fock_vectors(WS))
def test_grades_are_pythagorean(phi):
    assert sum(norm_sq(grade_project(phi, n)) for n in range(WS.n_max + 1)) == norm_sq(phi)


@given(fock_vectors(WS))
def test_positivity(phi):
    value = norm_sq(phi)
    assert isinstance(value, Fraction)
    assert (value > 0) == bool(phi)


@given(gaussian_rationals, fock_vectors(WS), fock_vectors(WS), fock_vectors(WS))
def test_sesquilinearity(a, phi, psi, theta):
    assert inner(phi.scale(a) + psi, theta) == a.conjugate() * inner(phi, theta) + inner(psi, theta)
    assert inner(theta, phi.scale(a)) == a * inner(theta, phi)


@given(fock_vectors(WS), fock_vectors(WS))
def test_hermitian_symmetry(phi, psi):
    assert inner(phi, psi) == inner(psi, phi).conjugate()


def test_tensor_to_occupation_examples(ws2):
    e1, e2 = ws2.basis(0), ws2.basis(1)
    assert tensor_to_occupation([e1]) == ws2.monomial((1, 0))
    assert tensor_to_occupation([e1, e2]) == ws2.monomial((1, 1))
    assert tensor_to_occupation([e1 + e2, e1]) == ws2.vector({(2, 0): 1, (1, 1): 1})
    assert tensor_to_occupation([], ws2) == ws2.vacuum()


def test_tensor_to_occupation_errors(ws2):
    e1 = ws2.basis(0)
    with pytest.raises(WorkspaceError):
        tensor_to_occupation([e1] * 5)
    with pytest.raises(WorkspaceError):
        tensor_to_occupation([e1, Workspace(3, 4).basis(0)])


def test_permanent_consistency_random():
    rng = random.Random(7)
    for d in range(1, 5):
        ws = Workspace(d, 6)
        for n in range(0, 7):
            for _ in range(3):
                def rv():
                    return ws.one_particle([GaussianRational(Fraction(rng.randint(-4, 4), rng.randint(1, 3)),
                                                             rng.randint(-2, 2)) for _ in range(d)])
                xs = [rv() for _ in range(n)]
                ys = [rv() for _ in range(n)]
                lhs = inner(tensor_to_occupation(xs, ws), tensor_to_occupation(ys, ws))
                assert lhs == brute_product_inner(xs, ys)


@settings(max_examples=40)
@given(st.data())
def test_tensor_symmetry(data):
    ws = Workspace(3, 4)
    xs = data.draw(st.lists(one_particle_vectors(ws), min_size=1, max_size=4))
    perm = data.draw(st.permutations(xs))
    assert tensor_to_occupation(xs) == tensor_to_occupation(list(perm))


def test_vector_validation(ws2):
    with pytest.raises(WorkspaceError):
        ws2.monomial((5, 0))
    with pytest.raises(WorkspaceError):
        ws2.monomial((1, 0, 0))
    with pytest.raises(WorkspaceError):
        inner(ws2.vacuum(), Workspace(2, 5).vacuum())
    assert len(ws2.vector({(1, 0): 0})) == 0


def test_occupation_indices_count():
    # C(n + d - 1, d - 1) monomials of grade n
    assert len(list(occupation_indices(4, 6))) == 84
    assert len(list(Workspace(4, 6).indices())) == 210


@given(fock_vectors(WS))
def test_json_round_trip_exact(phi):
    text = json.dumps(fock_to_json(phi))
    assert fock_from_json(text) == phi


def test_json_format():
    ws = Workspace(2, 3)
    phi = ws.vector({(1, 0): GaussianRational(Fraction(1, 2), -3)})
    obj = fock_to_json(phi)
    assert obj == {"d": 2, "n_max": 3, "backend": "exact",
                   "terms": [{"alpha": [1, 0], "re": "1/2", "im": "-3/1"}]}
    fws = Workspace(2, 3, "float")
    fphi = fws.vector({(0, 2): 0.25 + 1j})
    assert fock_from_json(fock_to_json(fphi)) == fphi


def test_float_backend_inner():
    ws = Workspace(2, 3, "float")
    phi = ws.vector({(2, 0): 1j, (0, 1): 2})
    assert inner(phi, phi) == pytest.approx(6)
    assert isinstance(norm_sq(phi), float)
    assert FockVector(ws, {}) == ws.zero()
