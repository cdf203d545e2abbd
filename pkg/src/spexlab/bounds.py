"""Executable forms of the classical spectral bounds used by the extremal arguments.

Every check evaluates both sides on a concrete graph and reports the signed
slack (bound minus actual) so near-equality cases stay visible.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

from .canon import CANON_CAP, canonical_form
from .errors import (
    DegenerateOrder,
    DisconnectedInput,
    InvalidDistribution,
    InvalidParameter,
    OrderMismatch,
)
from .families import extremal_h
from .graph import Graph, clique_number, graph6_encode, is_connected
from .reports import REPORT_TOL, BoundReport, IdentityReport, LemmaReport, lemma
from .spectra import (
    ADJACENCY,
    DEFAULT_SETTINGS,
    SIGNLESS_LAPLACIAN,
    SolverSettings,
    dominant_eigenpair,
    matrix,
    rayleigh_quotient,
)

BOUND_NAMES = ("HongNikiforov", "Wilf", "FengYu", "MotzkinStraus", "CliqueVector")


@lru_cache(maxsize=4096)
def graph_id(g: Graph) -> str:
    """Canonical graph6 where affordable, the plain encoding beyond the canonical-form cap."""
    return canonical_form(g) if g.n <= CANON_CAP else graph6_encode(g)


def _report(name: str, g: Graph, bound: float, actual: float, clamped: bool = False) -> BoundReport:
    slack = bound - actual
    return BoundReport(name, graph_id(g), bound, actual, slack, slack >= -REPORT_TOL, clamped)


def hong_nikiforov_bound(g: Graph, settings: SolverSettings = DEFAULT_SETTINGS) -> BoundReport:
    """lambda(G) <= (delta-1)/2 + sqrt(2m - delta*n + (delta+1)^2/4)."""
    n, m = g.n, g.edge_count
    delta = min(g.degrees())
    radicand = 2 * m - delta * n + (delta + 1) ** 2 / 4
    clamped = radicand < 0
    bound = (delta - 1) / 2 + math.sqrt(max(radicand, 0.0))
    return _report("HongNikiforov", g, bound, dominant_eigenpair(g, ADJACENCY, settings).value, clamped)


def wilf_bound(g: Graph, settings: SolverSettings = DEFAULT_SETTINGS) -> BoundReport:
    res = dominant_eigenpair(g, ADJACENCY, settings)
    omega = clique_number(g)
    l1 = float(np.sum(res.vector))
    return _report("Wilf", g, l1 * l1 * (1 - 1 / omega), res.value)


def feng_yu_bound(g: Graph, settings: SolverSettings = DEFAULT_SETTINGS) -> BoundReport:
    """q(G) <= 2m/(n-1) + n - 2."""
    n = g.n
    if n < 2:
        raise DegenerateOrder("the Feng-Yu bound needs n >= 2")
    bound = 2 * g.edge_count / (n - 1) + n - 2
    return _report("FengYu", g, bound, dominant_eigenpair(g, SIGNLESS_LAPLACIAN, settings).value)


def motzkin_straus_check(g: Graph, z) -> BoundReport:
    """2 * sum over edges of z_i z_j <= 1 - 1/omega(G) for a probability vector z."""
    z = np.asarray(z, dtype=float)
    if z.shape != (g.n,):
        raise InvalidDistribution(f"distribution of shape {z.shape} for a graph on {g.n} vertices")
    if np.any(z < 0) or abs(float(z.sum()) - 1.0) > 1e-12:
        raise InvalidDistribution("z must be nonnegative and sum to 1")
    actual = float(z @ g.adjacency_matrix() @ z)
    return _report("MotzkinStraus", g, 1 - 1 / clique_number(g), actual)


def clique_vector_check(g: Graph, settings: SolverSettings = DEFAULT_SETTINGS) -> BoundReport:
    """Motzkin-Straus applied to the normalised adjacency Perron vector."""
    x = dominant_eigenpair(g, ADJACENCY, settings).vector
    l1 = float(np.sum(x))
    edge_sum = 0.5 * float(x @ g.adjacency_matrix() @ x)
    return _report("CliqueVector", g, 1 - 1 / clique_number(g), 2 * edge_sum / (l1 * l1))


def all_bounds(g: Graph, settings: SolverSettings = DEFAULT_SETTINGS, z=None) -> list[BoundReport]:
    """Every bound that applies to ``g``; Motzkin-Straus uses the uniform distribution unless ``z`` is given."""
    out = [hong_nikiforov_bound(g, settings)]
    if g.n >= 2:
        out.append(feng_yu_bound(g, settings))
    out.append(wilf_bound(g, settings))
    out.append(clique_vector_check(g, settings))
    out.append(motzkin_straus_check(g, np.full(g.n, 1.0 / g.n) if z is None else z))
    return out


def double_eigenvector_identity(g: Graph, h: Graph, settings: SolverSettings = DEFAULT_SETTINGS) -> IdentityReport:
    """Replay both double-eigenvector identities for the Q-Perron vectors of ``g`` and ``h``."""
    if g.n != h.n:
        raise OrderMismatch(f"graphs have {g.n} and {h.n} vertices")
    if not (is_connected(g) and is_connected(h)):
        raise DisconnectedInput("Perron vectors are unique only for connected graphs")
    rg = dominant_eigenpair(g, SIGNLESS_LAPLACIAN, settings)
    rh = dominant_eigenpair(h, SIGNLESS_LAPLACIAN, settings)
    x, y = rg.vector, rh.vector
    qg, qh = matrix(g, SIGNLESS_LAPLACIAN), matrix(h, SIGNLESS_LAPLACIAN)
    lhs1 = float(x @ qg @ y)
    rhs1 = float(sum((x[i] + x[j]) * (y[i] + y[j]) for i, j in g.edges()))
    lhs2 = float(x @ y) * (rh.value - rg.value)
    rhs2 = float(x @ (qh - qg) @ y)
    return IdentityReport(lhs1, rhs1, lhs2, rhs2, max(abs(lhs1 - rhs1), abs(lhs2 - rhs2)))


def q_test_vector(n: int, delta: int) -> np.ndarray:
    y = np.ones(n)
    y[n - 1] = (delta - 1) / (2 * n)
    return y


def q_test_vector_closed_form(n: int, delta: int) -> float:
    """The quotient evaluated symbolically: clique edges contribute 4 each, the low vertex (1+t)^2 per edge."""
    t = (delta - 1) / (2 * n)
    return (2 * (n - 1) * (n - 2) + (delta - 1) * (1 + t) ** 2) / (n - 1 + t * t)


def q_test_vector_bound(n: int, delta: int) -> LemmaReport:
    """Rayleigh quotient of Q(H_{n,delta}) at the explicit test vector against 2n - 4 + (delta-1)/(n-1)."""
    if n < 2 or not 1 <= delta <= n - 1:
        raise InvalidParameter(f"need n >= 2 and 1 <= delta <= n-1, got n={n}, delta={delta}")
    h = extremal_h(n, delta)
    quotient = rayleigh_quotient(h, SIGNLESS_LAPLACIAN, q_test_vector(n, delta))
    rhs = 2 * n - 4 + (delta - 1) / (n - 1)
    return lemma("L4.1", {"n": n, "deltaF": delta}, quotient, ">=", rhs,
                 "test-vector Rayleigh quotient of Q(H_{n,delta})")
