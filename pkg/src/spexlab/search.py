"""Exhaustive extremal search: EX(n, F), SPEX(n, F) and SPEX_Q(n, F) at small n.

Each isomorphism class is scanned once.  A class is skipped without an
embedding test when a cheap upper bound on its objective already falls below
the value of H_{n, delta(F)}, which is always F-free, or when sorted-degree
dominance shows F cannot embed.  Partitions (one per parent representative)
can run in separate processes; the merge is order independent.
"""

from __future__ import annotations

import enum
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable

from .canon import canonical_form
from .embed import DEFAULT_BUDGET, contains_spanning, sorted_degree_dominance
from .errors import CapacityExceeded, InternalAssertion, InvalidParameter
from .families import FamilySpec, extremal_h
from .generate import GENERATE_CAP, children, generate_graphs, parent, parent_count
from .graph import Graph, complement, graph6_decode
from .spectra import (
    ADJACENCY,
    DEFAULT_SETTINGS,
    SIGNLESS_LAPLACIAN,
    SolverSettings,
    dense_spectral_radius,
    dominant_eigenpair,
)

TIE_TOLERANCE = 1e-9
DENSE_CAP = 16
RESCORE_TOL = 1e-8


class EmptyFeasibleSet(InternalAssertion):
    """No F-free graph was found, which the H_{n, delta(F)} construction rules out."""


class Objective(enum.Enum):
    EDGE_COUNT = "EdgeCount"
    ADJ_SPECTRAL_RADIUS = "AdjSpectralRadius"
    Q_SPECTRAL_RADIUS = "QSpectralRadius"

    def score(self, g: Graph, settings: SolverSettings = DEFAULT_SETTINGS) -> float:
        if self is Objective.EDGE_COUNT:
            return float(g.edge_count)
        kind = ADJACENCY if self is Objective.ADJ_SPECTRAL_RADIUS else SIGNLESS_LAPLACIAN
        return dominant_eigenpair(g, kind, settings).value

    def rescore(self, g: Graph) -> float:
        """Second opinion from a dense symmetric eigensolver."""
        if self is Objective.EDGE_COUNT:
            return float(len(list(g.edges())))
        kind = ADJACENCY if self is Objective.ADJ_SPECTRAL_RADIUS else SIGNLESS_LAPLACIAN
        return dense_spectral_radius(g, kind)

    def upper_bound(self, n: int, m: int) -> float:
        """Largest value any n-vertex graph with m edges can reach."""
        if self is Objective.EDGE_COUNT:
            return float(m)
        if self is Objective.ADJ_SPECTRAL_RADIUS:
            return (math.sqrt(1 + 8 * m) - 1) / 2
        return 2 * m / (n - 1) + n - 2 if n > 1 else 0.0


_OBJECTIVE_NAMES = {
    "edges": Objective.EDGE_COUNT,
    "lambda": Objective.ADJ_SPECTRAL_RADIUS,
    "q": Objective.Q_SPECTRAL_RADIUS,
}


def parse_objective(text: str) -> Objective:
    t = text.strip()
    if t.lower() in _OBJECTIVE_NAMES:
        return _OBJECTIVE_NAMES[t.lower()]
    try:
        return Objective(t)
    except ValueError:
        raise InvalidParameter(f"unknown objective {text!r}") from None


@dataclass
class SearchOutcome:
    n: int
    family: FamilySpec
    objective: Objective
    best_value: float
    witnesses: list[str]
    graphs_examined: int
    graphs_pruned: int
    tie_tolerance: float = TIE_TOLERANCE
    mode: str = "full"
    e_max: int | None = None

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "family": str(self.family),
            "objective": self.objective.value,
            "best_value": self.best_value,
            "witnesses": list(self.witnesses),
            "graphs_examined": self.graphs_examined,
            "graphs_pruned": self.graphs_pruned,
            "tie_tolerance": self.tie_tolerance,
            "mode": self.mode,
            "e_max": self.e_max,
        }


@dataclass
class _Partial:
    best: float = -math.inf
    candidates: list[tuple[float, str]] = field(default_factory=list)
    examined: int = 0
    pruned: int = 0

    def offer(self, value: float, g: Graph) -> None:
        if value < self.best - TIE_TOLERANCE:
            return
        if value > self.best:
            self.best = value
            self.candidates = [c for c in self.candidates if c[0] >= value - TIE_TOLERANCE]
        self.candidates.append((value, canonical_form(g)))


def _merge(parts: Iterable[_Partial]) -> _Partial:
    out = _Partial()
    pool = []
    for p in parts:
        out.examined += p.examined
        out.pruned += p.pruned
        out.best = max(out.best, p.best)
        pool.extend(p.candidates)
    out.candidates = [c for c in pool if c[0] >= out.best - TIE_TOLERANCE]
    return out


def feasible_floor(f: Graph, objective: Objective, settings: SolverSettings = DEFAULT_SETTINGS) -> float:
    """Objective value of H_{n, delta(F)}, a lower bound on the optimum (or -inf when F has an isolated vertex)."""
    delta = min(f.degrees())
    if delta < 1 or f.n < 2:
        return -math.inf
    return objective.score(extremal_h(f.n, delta), settings)


def sufficient_emax(f: Graph, objective: Objective, settings: SolverSettings = DEFAULT_SETTINGS) -> int:
    """Smallest complement size for which dense mode provably sees every co-extremal graph."""
    n = f.n
    floor = feasible_floor(f, objective, settings)
    total = n * (n - 1) // 2
    if floor == -math.inf:
        return total
    m = 0
    while objective.upper_bound(n, m) < floor - TIE_TOLERANCE:
        m += 1
    return total - m


def _scan(graphs: Iterable[Graph], f: Graph, objective: Objective, floor: float,
          settings: SolverSettings, budget: int) -> _Partial:
    part = _Partial()
    for g in graphs:
        part.examined += 1
        if objective.upper_bound(g.n, g.edge_count) < floor - TIE_TOLERANCE:
            part.pruned += 1
            continue
        if not sorted_degree_dominance(g, f):
            part.pruned += 1
        elif contains_spanning(g, f, budget) is not None:
            continue
        part.offer(objective.score(g, settings), g)
    return part


def _partition_graphs(n: int, index: int, max_edges: int | None, dense: bool) -> Iterable[Graph]:
    if n == 1:
        src = generate_graphs(1)
    else:
        p, gens = parent(n, index, max_edges)
        src = children(p, gens, max_edges)
    return (complement(g) for g in src) if dense else src


def _run_partition(args) -> _Partial:
    n, index, max_edges, dense, f, objective, floor, settings, budget = args
    return _scan(_partition_graphs(n, index, max_edges, dense), f, objective, floor, settings, budget)


def search_extremal(n: int, family: FamilySpec, objective: Objective, dense_mode: bool = False,
                    e_max: int | None = None, workers: int = 1, stream: Iterable[Graph] | None = None,
                    settings: SolverSettings = DEFAULT_SETTINGS, budget: int = DEFAULT_BUDGET) -> SearchOutcome:
    """Maximise ``objective`` over the F-free graphs on ``n`` vertices.

    Full mode scans every isomorphism class (n <= 10).  Dense mode scans the
    complements of all classes with at most ``e_max`` edges (default 2n).
    ``stream`` replaces the internal generator with caller-supplied graphs.
    """
    f = family.build()
    if f.n != n:
        raise InvalidParameter(f"family {family} has {f.n} vertices, search is over n={n}")
    floor = feasible_floor(f, objective, settings)
    mode = "stream" if stream is not None else ("dense" if dense_mode else "full")
    if stream is not None:
        graphs = list(stream)
        for g in graphs:
            if g.n != n:
                raise InvalidParameter(f"stream graph on {g.n} vertices, expected {n}")
        merged = _scan(graphs, f, objective, floor, settings, budget)
        e_max = None
    else:
        if dense_mode:
            if n > DENSE_CAP:
                raise CapacityExceeded(f"dense mode is capped at n={DENSE_CAP}, got {n}")
            e_max = 2 * n if e_max is None else e_max
            if e_max < 0:
                raise InvalidParameter(f"e_max must be nonnegative, got {e_max}")
            delta = min(f.degrees())
            if delta >= 1 and e_max < n - delta:
                raise InvalidParameter(
                    f"e_max={e_max} excludes H_{{{n},{delta}}}, whose complement has {n - delta} edges")
            max_edges = e_max
        else:
            if n > GENERATE_CAP:
                raise CapacityExceeded(f"full mode is capped at n={GENERATE_CAP}, got {n}")
            if n < 1:
                raise InvalidParameter(f"n must be positive, got {n}")
            e_max = None
            max_edges = None
        count = 1 if n == 1 else parent_count(n, max_edges)
        jobs = [(n, i, max_edges, dense_mode, f, objective, floor, settings, budget) for i in range(count)]
        if workers > 1 and count > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                parts = list(pool.map(_run_partition, jobs, chunksize=max(1, count // (4 * workers))))
        else:
            parts = [_run_partition(j) for j in jobs]
        merged = _merge(parts)
    if not merged.candidates:
        raise EmptyFeasibleSet(f"no {family}-free graph found on {n} vertices")
    witnesses = sorted({c[1] for c in merged.candidates})
    _verify_witnesses(witnesses, f, objective, merged.best, budget)
    return SearchOutcome(n, family, objective, merged.best, witnesses, merged.examined, merged.pruned,
                         TIE_TOLERANCE, mode, e_max)


def _verify_witnesses(witnesses: list[str], f: Graph, objective: Objective, best: float, budget: int) -> None:
    for w in witnesses:
        g = graph6_decode(w)
        if contains_spanning(g, f, budget) is not None:
            raise InternalAssertion(f"witness {w} contains the forbidden graph")
        value = objective.rescore(g)
        if abs(value - best) > RESCORE_TOL * max(1.0, abs(best)):
            raise InternalAssertion(f"witness {w} re-scores to {value!r}, search reported {best!r}")
