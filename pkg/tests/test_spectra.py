from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from spexlab.errors import ConvergenceFailure, DimensionMismatch, InvalidParameter, ZeroVector
from spexlab.families import extremal_h
from spexlab.graph import (
    Graph,
    complete_graph,
    complete_multipartite,
    cycle_graph,
    disjoint_union,
    empty_graph,
    path_graph,
    petersen_graph,
)
from spexlab.spectra import (
    ADJACENCY,
    SIGNLESS_LAPLACIAN,
    SolverSettings,
    alpha_kind,
    dense_spectral_radius,
    dominant_eigenpair,
    eigenvalue_equation_residual,
    matrix,
    parse_kind,
    q_index,
    rayleigh_quotient,
    spectral_radius,
)
from strategies import graphs

# frozen from numpy.linalg.eigvalsh on the explicit matrices
FROZEN = {
    (7, 2): (5.0340418358034915, 10.216990566028302),
    (8, 2): (6.024204143726214, 12.178908345800274),
    (10, 3): (8.056368638500844, 16.280109889280514),
    (20, 3): (18.011749677487714, 36.1172427686237),
}


def contract_ok(res) -> bool:
    return res.residual <= 1e-10 * max(1.0, res.value)


@pytest.mark.parametrize("n", [2, 3, 5, 10, 40])
def test_complete_graph_closed_forms(n):
    a = dominant_eigenpair(complete_graph(n), ADJACENCY)
    q = dominant_eigenpair(complete_graph(n), SIGNLESS_LAPLACIAN)
    assert abs(a.value - (n - 1)) <= 1e-9
    assert abs(q.value - (2 * n - 2)) <= 1e-9
    assert np.allclose(a.vector, 1 / math.sqrt(n), atol=1e-9)
    assert contract_ok(a) and contract_ok(q)


@pytest.mark.parametrize("a,b", [(1, 1), (2, 3), (3, 5), (4, 4), (1, 7)])
def test_complete_bipartite(a, b):
    res = dominant_eigenpair(complete_multipartite([a, b]), ADJACENCY)
    assert abs(res.value - math.sqrt(a * b)) <= 1e-9
    assert contract_ok(res)


@pytest.mark.parametrize("n", [3, 4, 5, 8, 17])
def test_cycle_q_index(n):
    assert abs(q_index(cycle_graph(n)) - 4.0) <= 1e-9
    assert abs(spectral_radius(cycle_graph(n)) - 2.0) <= 1e-9


@pytest.mark.parametrize("nk", sorted(FROZEN))
def test_frozen_h_values(nk):
    lam, q = FROZEN[nk]
    g = extremal_h(*nk)
    assert abs(spectral_radius(g) - lam) <= 1e-9
    assert abs(q_index(g) - q) <= 1e-9


def test_h_lower_bounds():
    for n in (10, 50, 100):
        for d in (1, 2, 3):
            g = extremal_h(n, d)
            assert spectral_radius(g) >= n - 2 - 1e-9
            assert q_index(g) >= 2 * (n - 2) - 1e-9


def test_alpha_kinds():
    p = petersen_graph()
    # 3-regular: A_alpha has radius 3 for every alpha
    for a in (0.0, 0.25, 0.5, 1.0):
        assert abs(dominant_eigenpair(p, alpha_kind(a)).value - 3.0) <= 1e-9
    g = extremal_h(9, 3)
    half = dominant_eigenpair(g, alpha_kind(0.5)).value
    assert abs(half - q_index(g) / 2) <= 1e-9
    assert abs(dominant_eigenpair(g, alpha_kind(0.0)).value - spectral_radius(g)) <= 1e-9


@given(graphs(1, 14), st.sampled_from(["adj", "q", "alpha:0.3", "alpha:0.9"]))
def test_against_dense_solver(g, kind_text):
    kind = parse_kind(kind_text)
    res = dominant_eigenpair(g, kind)
    assert abs(res.value - dense_spectral_radius(g, kind)) <= 1e-8 * max(1.0, res.value)
    assert contract_ok(res)
    assert np.all(res.vector >= 0)
    assert abs(np.linalg.norm(res.vector) - 1) <= 1e-12
    assert eigenvalue_equation_residual(g, kind, res) <= 1e-10 * max(1.0, res.value)


def test_disconnected_support():
    g = disjoint_union(cycle_graph(4), complete_graph(4))
    res = dominant_eigenpair(g, ADJACENCY)
    assert abs(res.value - 3) <= 1e-9
    assert res.support_component == 1
    assert np.all(res.vector[:4] == 0)
    # equal components: lowest index wins
    two = disjoint_union(complete_graph(3), complete_graph(3))
    res = dominant_eigenpair(two, SIGNLESS_LAPLACIAN)
    assert res.support_component == 0 and np.all(res.vector[3:] == 0)


def test_edgeless_and_single_vertex():
    for g in (empty_graph(1), empty_graph(4)):
        res = dominant_eigenpair(g, ADJACENCY)
        assert res.value == 0.0
        assert abs(np.linalg.norm(res.vector) - 1) <= 1e-12


def test_bipartite_shift_converges():
    # adjacency of a bipartite graph has -lambda in its spectrum; the shift breaks the tie
    res = dominant_eigenpair(path_graph(9), ADJACENCY)
    assert abs(res.value - 2 * math.cos(math.pi / 10)) <= 1e-9
    assert contract_ok(res)


def test_convergence_failure_reports_best_residual():
    with pytest.raises(ConvergenceFailure) as info:
        dominant_eigenpair(extremal_h(30, 3), ADJACENCY, SolverSettings(tol=1e-300, max_iter=16))
    assert info.value.best_residual > 0


def test_rayleigh_quotient():
    g = complete_graph(4)
    assert rayleigh_quotient(g, ADJACENCY, np.ones(4)) == pytest.approx(3.0)
    with pytest.raises(DimensionMismatch):
        rayleigh_quotient(g, ADJACENCY, np.ones(3))
    with pytest.raises(ZeroVector):
        rayleigh_quotient(g, ADJACENCY, np.zeros(4))


def test_kind_parsing():
    assert parse_kind("adj") == ADJACENCY and parse_kind("q") == SIGNLESS_LAPLACIAN
    assert str(parse_kind("alpha:0.25")) == "alpha:0.25"
    for bad in ("alpha:2", "alpha:x", "laplacian"):
        with pytest.raises(InvalidParameter):
            parse_kind(bad)


def test_matrix_entries():
    g = Graph.from_edges(3, [(0, 1), (1, 2)])
    q = matrix(g, SIGNLESS_LAPLACIAN)
    assert q.tolist() == [[1, 1, 0], [1, 2, 1], [0, 1, 1]]
    a = matrix(g, alpha_kind(0.5))
    assert a.tolist() == [[0.5, 0.5, 0], [0.5, 1.0, 0.5], [0, 0.5, 0.5]]
