from __future__ import annotations

import pytest

from spexlab.canon import canonical_form
from spexlab.errors import CapacityExceeded, InvalidParameter
from spexlab.generate import KNOWN_COUNTS, generate_graphs, parents, subset_orbit_representatives
from spexlab.graph import Graph
from test_canon import brute_canonical


@pytest.mark.parametrize("n", range(1, 9))
def test_counts(n):
    assert sum(1 for _ in generate_graphs(n)) == KNOWN_COUNTS[n]


@pytest.mark.parametrize("n", range(1, 8))
def test_no_duplicates(n):
    forms = [canonical_form(g) for g in generate_graphs(n)]
    assert len(forms) == len(set(forms)) == KNOWN_COUNTS[n]


@pytest.mark.parametrize("n", range(1, 6))
def test_matches_labelled_enumeration(n):
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    labelled = set()
    for mask in range(1 << len(pairs)):
        g = Graph.from_edges(n, [e for k, e in enumerate(pairs) if mask >> k & 1])
        labelled.add(brute_canonical(g))
    generated = {brute_canonical(g) for g in generate_graphs(n)}
    assert generated == labelled


def test_known_small_values():
    assert sum(1 for _ in generate_graphs(4)) == 11
    assert sum(1 for _ in generate_graphs(7)) == 1044


@pytest.mark.parametrize("n,e", [(6, 4), (7, 7), (8, 5)])
def test_edge_bounded_generation(n, e):
    bounded = {canonical_form(g) for g in generate_graphs(n, max_edges=e)}
    full = {canonical_form(g) for g in generate_graphs(n) if g.edge_count <= e}
    assert bounded == full


def test_edge_bounded_beyond_cap():
    # 11 vertices, at most 3 edges: classes are partitions of the edge multiset shapes
    got = sum(1 for _ in generate_graphs(11, max_edges=3, cap=16))
    assert got == 1 + 1 + 2 + 5


def test_partition_by_parent_covers_level():
    ps = parents(6)
    assert len(ps) == KNOWN_COUNTS[5]


def test_subset_orbits():
    # S_3 acting on 3 points: subsets fall into 4 orbits by size
    gens = [(1, 0, 2), (0, 2, 1)]
    reps = subset_orbit_representatives(3, gens)
    assert sorted(bin(r).count("1") for r in reps) == [0, 1, 2, 3]
    assert len(subset_orbit_representatives(3, [])) == 8


def test_errors():
    with pytest.raises(CapacityExceeded):
        next(generate_graphs(11))
    with pytest.raises(InvalidParameter):
        next(generate_graphs(0))
