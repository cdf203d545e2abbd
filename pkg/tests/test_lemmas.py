from __future__ import annotations

import csv
import io
import json
import math

import pytest

from spexlab.bounds import q_test_vector_bound
from spexlab.errors import InvalidEpsilon, InvalidParameter
from spexlab.families import extremal_h
from spexlab.graph import complete_graph, cycle_graph
from spexlab.lemmas import (
    CSV_FIELDS,
    CliqueFactorCase,
    CyclePowerCase,
    FactorCase,
    check_adjacency_chain,
    check_q_chain,
    degree_histogram,
    parse_case,
    partition,
    reports_to_csv,
    reports_to_json,
    satisfaction_is_monotone,
    verify_corollary,
)

GRID = [(n, d) for n in (20, 50, 100, 200) for d in (1, 2, 3, 5)]


def by_id(reports, lemma_id):
    return [r for r in reports if r.lemma_id == lemma_id]


def test_adjacency_chain_example_h100():
    reports = check_adjacency_chain(extremal_h(100, 3), 3)
    ids = [r.lemma_id for r in reports]
    assert ids == ["L3.1", "L3.2", "L3.3", "L3.3", "L3.4", "L3.5", "L3.6", "L3.7", "L3.8", "L3.9"]
    l31 = by_id(reports, "L3.1")[0]
    assert l31.satisfied and l31.lhs >= 98 and l31.rhs == 98


def test_adjacency_chain_fails_on_cycle():
    reports = check_adjacency_chain(cycle_graph(8), 2)
    l31 = by_id(reports, "L3.1")[0]
    assert not l31.satisfied and abs(l31.lhs - 2) <= 1e-9 and l31.rhs == 6


@pytest.mark.parametrize("n,d", GRID)
def test_assertable_adjacency_lemmas_on_h(n, d):
    reports = check_adjacency_chain(extremal_h(n, d), d)
    assert by_id(reports, "L3.1")[0].satisfied
    left, right = by_id(reports, "L3.3")
    assert left.relation == ">=" and left.satisfied
    assert by_id(reports, "L3.4")[0].satisfied
    assert by_id(reports, "L3.9")[0].satisfied


@pytest.mark.parametrize("n,d", GRID)
def test_assertable_q_lemmas_on_h(n, d):
    reports, part, entries = check_q_chain(extremal_h(n, d), d, 0.1)
    for lemma_id in ("L4.1", "L4.3", "L4.9"):
        assert by_id(reports, lemma_id)[0].satisfied
    assert q_test_vector_bound(n, d).satisfied
    assert part.L_size + part.S_size == n
    assert len(entries) == n


def test_q_chain_example_h200_4():
    reports, _, _ = check_q_chain(extremal_h(200, 4), 4, 0.1)
    l41 = by_id(reports, "L4.1")[0]
    assert l41.satisfied and abs(l41.rhs - (2 * 198 + 3 / 199)) <= 1e-12


def test_partition_single_small_vertex():
    # once n > (delta-1)/eps + 1/eps the clique vertices all land in L
    for n, d in ((50, 3), (100, 5), (200, 2)):
        assert n > (d - 1) / 0.1 + 1 / 0.1
        part = partition(extremal_h(n, d), 0.1)
        assert part.S == [n - 1] and part.within_bound


def test_vertex_entry_trend():
    worst = []
    for n in (100, 200, 400):
        _, _, entries = check_q_chain(extremal_h(n, 3), 3, 0.1)
        worst.append(max(e.deviation for e in entries if e.vertex != n - 1))
        for e in entries:
            assert abs(e.predicted - e.c_v / ((2 - e.c_v) * math.sqrt(n))) <= 1e-15
            assert abs(e.deviation - abs(e.actual - e.predicted) * math.sqrt(n)) <= 1e-15
    assert worst[0] > worst[1] > worst[2]


def test_asymptotic_lemmas_reported_and_monotone():
    # entry lemmas are evaluated along increasing n; satisfaction, once reached, persists
    ns = [20, 50, 100, 200, 400, 512]
    for lemma_id in ("L3.5", "L3.6", "L3.7", "L3.8"):
        for d in (2, 3):
            series = [by_id(check_adjacency_chain(extremal_h(n, d), d), lemma_id)[0].satisfied for n in ns]
            assert satisfaction_is_monotone(series), (lemma_id, d, series)
    for lemma_id in ("L4.4", "L4.5", "L4.7", "L4.8"):
        series = [by_id(check_q_chain(extremal_h(n, 3), 3, 0.1)[0], lemma_id)[0].satisfied for n in ns]
        assert satisfaction_is_monotone(series), (lemma_id, series)


def test_l38_needs_large_n():
    # x_w < 1/(19n) fails on H_{n,3} at desk scale: x_w is about 2/n^{3/2}, below 1/(19n) only once n > 1444
    r = by_id(check_adjacency_chain(extremal_h(200, 3), 3), "L3.8")[0]
    assert not r.satisfied
    r = by_id(check_adjacency_chain(extremal_h(200, 1), 1), "L3.8")[0]
    assert r.satisfied  # isolated vertex: x_w = 0


def test_monotone_helper():
    assert satisfaction_is_monotone([False, False, True, True])
    assert not satisfaction_is_monotone([True, False])
    assert satisfaction_is_monotone([])


def test_q_chain_epsilon_validation():
    for eps in (0.0, 1 / 7, 0.5, -0.1):
        with pytest.raises(InvalidEpsilon):
            check_q_chain(extremal_h(20, 2), 2, eps)
    with pytest.raises(InvalidParameter):
        check_adjacency_chain(complete_graph(2), 1)


def test_reports_are_reproducible():
    a = [r.to_dict() for r in check_q_chain(extremal_h(100, 3), 3, 0.1)[0]]
    b = [r.to_dict() for r in check_q_chain(extremal_h(100, 3), 3, 0.1)[0]]
    assert a == b


def test_notes_flag_regime():
    r = by_id(check_adjacency_chain(extremal_h(50, 3), 3), "L3.5")[0]
    assert "asymptotic" in r.note and "outside the guaranteed regime" in r.note


def test_serialisation():
    reports, _, _ = check_q_chain(extremal_h(30, 2), 2, 0.1)
    rows = list(csv.reader(io.StringIO(reports_to_csv(reports))))
    assert tuple(rows[0]) == CSV_FIELDS
    assert len(rows) == len(reports) + 1
    assert rows[1][0] == "L4.1" and rows[1][1] == "30" and rows[1][2] == "2" and rows[1][3] == "0.1"
    doc = json.loads(reports_to_json(reports))
    assert doc["reports"][0]["lemma_id"] == "L4.1"
    assert degree_histogram(extremal_h(6, 2)) == {1: 1, 4: 4, 5: 1}


def test_corollary_cyclepower_12_2():
    reports = verify_corollary(CyclePowerCase(12, 2))
    assert all(r.lemma_id == "C5.1-cyclepower" for r in reports)
    assert reports[0].satisfied and reports[0].lhs == 0.0  # H_{12,4} avoids C_12^2
    assert "minimum degree is 3" in reports[0].note


def test_corollary_cliquefactor_9_2():
    reports = verify_corollary(CliqueFactorCase(9, 2))
    assert reports[0].satisfied
    spex = [r for r in reports if r.lemma_id == "C5.5-cliquefactor" and r.note.startswith("spex")][0]
    assert spex.satisfied  # exhaustive SPEX at n = 9 is attained by H_{9,2}
    count = by_id(reports, "T1.4-count")[0]
    # the edge count at n = 9 is a finding outside the large-n regime: recorded, not asserted either way
    assert count.rhs == 29


def test_corollary_factor_10_2_3():
    reports = verify_corollary(FactorCase(10, 2, 3))
    assert reports[0].satisfied and reports[1].satisfied


def test_corollary_perfect_matching_count():
    reports = verify_corollary(FactorCase(8, 1, 1))
    count = by_id(reports, "T1.4-count")[0]
    assert count.satisfied and count.lhs == 21


def test_parse_case():
    assert parse_case("cyclepower:12,2") == CyclePowerCase(12, 2)
    assert parse_case("factor:10,2,3") == FactorCase(10, 2, 3)
    assert parse_case("cliquefactor:9,2") == CliqueFactorCase(9, 2)
    for bad in ("cyclepower:12", "wheel:3,1", "factor:a,b,c"):
        with pytest.raises(InvalidParameter):
            parse_case(bad)
    with pytest.raises(InvalidParameter):
        verify_corollary(FactorCase(10, 3, 2))
    with pytest.raises(InvalidParameter):
        verify_corollary(CliqueFactorCase(10, 2))
