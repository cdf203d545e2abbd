"""Dominant eigenpairs of A(G), Q(G) = D + A and A_alpha(G) = alpha*D + (1 - alpha)*A.

Power iteration, certified by the residual of the eigenvalue equation rather
than by convergence theory.  Disconnected graphs are solved per component.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ConvergenceFailure, DimensionMismatch, InvalidParameter, ZeroVector
from .graph import Graph, connected_components

DEFAULT_TOL = 1e-10
DEFAULT_MAX_ITER = 200_000
_CHECK_EVERY = 8


@dataclass(frozen=True)
class SolverSettings:
    tol: float = DEFAULT_TOL
    max_iter: int = DEFAULT_MAX_ITER


DEFAULT_SETTINGS = SolverSettings()


@dataclass(frozen=True)
class MatrixKind:
    tag: str
    alpha: float | None = None

    def __post_init__(self):
        if self.tag not in ("adjacency", "signless_laplacian", "alpha"):
            raise InvalidParameter(f"unknown matrix kind {self.tag!r}")
        if self.tag == "alpha":
            if self.alpha is None or not 0.0 <= self.alpha <= 1.0:
                raise InvalidParameter(f"alpha must lie in [0, 1], got {self.alpha}")
        elif self.alpha is not None:
            raise InvalidParameter(f"{self.tag} takes no alpha")

    @property
    def diagonal_weight(self) -> float:
        return {"adjacency": 0.0, "signless_laplacian": 1.0}.get(self.tag, self.alpha)

    @property
    def offdiagonal_weight(self) -> float:
        return 1.0 if self.tag != "alpha" else 1.0 - self.alpha

    def __str__(self) -> str:
        return {"adjacency": "adj", "signless_laplacian": "q"}.get(self.tag) or f"alpha:{self.alpha:g}"


ADJACENCY = MatrixKind("adjacency")
SIGNLESS_LAPLACIAN = MatrixKind("signless_laplacian")


def alpha_kind(a: float) -> MatrixKind:
    return MatrixKind("alpha", float(a))


def parse_kind(text: str) -> MatrixKind:
    t = text.strip().lower()
    if t in ("adj", "a", "adjacency"):
        return ADJACENCY
    if t in ("q", "signless", "signless_laplacian"):
        return SIGNLESS_LAPLACIAN
    if t.startswith("alpha:"):
        try:
            return alpha_kind(float(t[6:]))
        except ValueError:
            raise InvalidParameter(f"bad alpha value in {text!r}") from None
    raise InvalidParameter(f"unknown matrix kind {text!r}")


def matrix(g: Graph, kind: MatrixKind = ADJACENCY) -> np.ndarray:
    a = g.adjacency_matrix()
    dw = kind.diagonal_weight
    if kind.offdiagonal_weight != 1.0:
        a *= kind.offdiagonal_weight
    if dw:
        a[np.diag_indices_from(a)] = dw * np.asarray(g.degrees(), dtype=float)
    return a


@dataclass
class SpectrumResult:
    value: float
    vector: np.ndarray = field(repr=False)
    residual: float
    iterations: int
    support_component: int
    kind: MatrixKind = ADJACENCY


def _residual(m: np.ndarray, x: np.ndarray, value: float) -> float:
    return float(np.max(np.abs(m @ x - value * x))) if x.size else 0.0


def _power(m: np.ndarray, shift: float, degrees: np.ndarray, settings: SolverSettings) -> tuple[float, np.ndarray, float, int]:
    n = m.shape[0]
    if n == 1:
        return float(m[0, 0]), np.ones(1), 0.0, 0
    x = degrees / np.linalg.norm(degrees) + 1.0 / n
    x /= np.linalg.norm(x)
    b = m + shift * np.eye(n) if shift else m
    best = np.inf
    for it in range(1, settings.max_iter + 1):
        y = b @ x
        x = y / np.linalg.norm(y)
        if it % _CHECK_EVERY == 0 or it < _CHECK_EVERY:
            mx = m @ x
            value = float(x @ mx)
            res = float(np.max(np.abs(mx - value * x)))
            best = min(best, res)
            if res <= settings.tol * max(1.0, value):
                return value, x, res, it
    raise ConvergenceFailure(f"power iteration did not converge in {settings.max_iter} steps", best)


def dominant_eigenpair(g: Graph, kind: MatrixKind = ADJACENCY,
                       settings: SolverSettings = DEFAULT_SETTINGS) -> SpectrumResult:
    """Spectral radius and nonnegative unit eigenvector of the chosen matrix.

    For a disconnected graph the vector lives on the component with the
    largest value (lowest component index on ties) and is zero elsewhere.
    """
    m = matrix(g, kind)
    shift = 1.0 if kind.diagonal_weight == 0.0 else 0.0
    degs = np.asarray(g.degrees(), dtype=float)
    comps = connected_components(g)
    solved = []
    for comp in comps:
        idx = np.asarray(comp)
        sub = m[np.ix_(idx, idx)]
        d = degs[idx] if degs[idx].any() else np.ones(len(idx))
        solved.append(_power(sub, shift, d, settings))
    top = max(s[0] for s in solved)
    pick = next(i for i, s in enumerate(solved) if s[0] >= top - settings.tol * max(1.0, top))
    value, sub_vec, _, iters = solved[pick]
    x = np.zeros(g.n)
    x[np.asarray(comps[pick])] = sub_vec
    x = np.abs(x)
    x /= np.linalg.norm(x)
    return SpectrumResult(value, x, _residual(m, x, value), iters, pick, kind)


def spectral_radius(g: Graph, settings: SolverSettings = DEFAULT_SETTINGS) -> float:
    return dominant_eigenpair(g, ADJACENCY, settings).value


def q_index(g: Graph, settings: SolverSettings = DEFAULT_SETTINGS) -> float:
    return dominant_eigenpair(g, SIGNLESS_LAPLACIAN, settings).value


def rayleigh_quotient(g: Graph, kind: MatrixKind, z) -> float:
    z = np.asarray(z, dtype=float)
    if z.shape != (g.n,):
        raise DimensionMismatch(f"vector of shape {z.shape} for a graph on {g.n} vertices")
    zz = float(z @ z)
    if zz == 0.0:
        raise ZeroVector("Rayleigh quotient of the zero vector")
    return float(z @ matrix(g, kind) @ z) / zz


def eigenvalue_equation_residual(g: Graph, kind: MatrixKind, result: SpectrumResult) -> float:
    """Largest per-vertex violation of ``M x = value * x``."""
    x = np.asarray(result.vector, dtype=float)
    if x.shape != (g.n,):
        raise DimensionMismatch(f"vector of shape {x.shape} for a graph on {g.n} vertices")
    return _residual(matrix(g, kind), x, result.value)


def dense_spectral_radius(g: Graph, kind: MatrixKind = ADJACENCY) -> float:
    """Largest eigenvalue from LAPACK; an independent check on the power iteration."""
    return float(np.linalg.eigvalsh(matrix(g, kind))[-1])
