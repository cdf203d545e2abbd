"""Report records shared by the bound checks and the lemma diagnostics."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

REPORT_TOL = 1e-9

_RELATIONS = {
    ">=": lambda l, r: l >= r - REPORT_TOL,
    ">": lambda l, r: l > r - REPORT_TOL,
    "<=": lambda l, r: l <= r + REPORT_TOL,
    "<": lambda l, r: l < r + REPORT_TOL,
    "==": lambda l, r: abs(l - r) <= REPORT_TOL,
}


def holds(lhs: float, relation: str, rhs: float) -> bool:
    """Compare with the shared 1e-9 tolerance; strict and non-strict relations are treated alike."""
    if math.isnan(lhs) or math.isnan(rhs):
        return False
    return _RELATIONS[relation](lhs, rhs)


def _clean(value):
    # JSON has no NaN/inf
    if isinstance(value, float) and not math.isfinite(value):
        return None
    if isinstance(value, dict):
        return {k: _clean(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_clean(v) for v in value]
    return value


@dataclass
class BoundReport:
    bound_name: str
    graph_id: str
    bound_value: float
    actual_value: float
    slack: float
    holds: bool
    radicand_clamped: bool = False

    def to_dict(self) -> dict:
        return _clean(asdict(self))


@dataclass
class IdentityReport:
    lhs1: float
    rhs1: float
    lhs2: float
    rhs2: float
    max_abs_gap: float

    def to_dict(self) -> dict:
        return _clean(asdict(self))


@dataclass
class LemmaReport:
    lemma_id: str
    inputs: dict
    lhs: float
    rhs: float
    satisfied: bool
    relation: str = ">="
    note: str = ""

    def to_dict(self) -> dict:
        return _clean(asdict(self))


def lemma(lemma_id: str, inputs: dict, lhs: float, relation: str, rhs: float, note: str = "") -> LemmaReport:
    return LemmaReport(lemma_id, dict(inputs), float(lhs), float(rhs), holds(lhs, relation, rhs), relation, note)


@dataclass
class PartitionReport:
    epsilon: float
    L_size: int
    S_size: int
    bound_3_over_eps: float
    within_bound: bool
    S: list[int] = field(default_factory=list)

    def to_dict(self) -> dict:
        return _clean(asdict(self))


@dataclass
class VertexEntryReport:
    vertex: int
    c_v: float
    predicted: float
    actual: float
    deviation: float

    def to_dict(self) -> dict:
        return _clean(asdict(self))
