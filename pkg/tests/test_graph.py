from __future__ import annotations

import math

import networkx as nx
import numpy as np
import pytest
from hypothesis import given

from spexlab.errors import CapacityExceeded, InvalidParameter, MalformedGraph6
from spexlab.families import (
    CliqueFactor,
    Custom,
    CyclePower,
    ExtremalH,
    PerfectMatching,
    Turan,
    extremal_h,
    h_as_join,
    parse_family,
)
from spexlab.graph import (
    Graph,
    clique_number,
    complement,
    complete_graph,
    complete_multipartite,
    connected_components,
    cycle_graph,
    degree_summary,
    disjoint_union,
    empty_graph,
    graph6_decode,
    graph6_encode,
    is_connected,
    join,
    path_graph,
    petersen_graph,
    read_graph6_lines,
    write_graph6_lines,
)
from strategies import graphs, graphs_with_perm


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def test_basic_constructors():
    assert complete_graph(5).edge_count == 10
    assert cycle_graph(6).degrees() == [2] * 6
    assert path_graph(4).edge_count == 3
    assert empty_graph(3).edge_count == 0
    assert complete_multipartite([2, 3]).edge_count == 6
    p = petersen_graph()
    assert p.n == 10 and p.edge_count == 15 and set(p.degrees()) == {3}
    assert nx.is_isomorphic(to_nx(p), nx.petersen_graph())


def test_validation():
    with pytest.raises(InvalidParameter):
        Graph.from_edges(3, [(0, 0)])
    with pytest.raises(InvalidParameter):
        Graph.from_edges(3, [(0, 3)])
    with pytest.raises(InvalidParameter):
        Graph(2, [0b10, 0])  # asymmetric
    with pytest.raises(InvalidParameter):
        Graph.from_edges(0, [])
    with pytest.raises(CapacityExceeded):
        empty_graph(513)
    assert empty_graph(512).n == 512


@pytest.mark.parametrize("n,k", [(n, k) for n in range(1, 12) for k in range(1, n + 1)])
def test_extremal_h_structure(n, k):
    h = extremal_h(n, k)
    assert h.edge_count == (n - 1) * (n - 2) // 2 + k - 1
    assert h.degree(n - 1) == k - 1
    assert h == h_as_join(n, k)
    if n > 1:
        assert h.delete_vertex(n - 1).is_complete()


def test_extremal_h_examples():
    # K_1 v (K_4 u K_1): low vertex degree 1, the rest form K_5
    h = extremal_h(6, 2)
    assert degree_summary(h).sorted_degrees == (5, 4, 4, 4, 4, 1)
    assert h == h_as_join(6, 2)
    assert extremal_h(5, 1) == disjoint_union(complete_graph(4), empty_graph(1))
    with pytest.raises(InvalidParameter):
        extremal_h(5, 6)
    with pytest.raises(InvalidParameter):
        extremal_h(5, 0)


def test_families_build_and_parse():
    assert CyclePower(7, 1).build() == cycle_graph(7)
    c2 = CyclePower(8, 2).build()
    assert set(c2.degrees()) == {4}
    assert CliqueFactor(9, 2).build().edge_count == 9
    assert PerfectMatching(6).build().edge_count == 3
    t = Turan(7, 3).build()
    assert t.edge_count == nx.turan_graph(7, 3).number_of_edges()
    for spec in (ExtremalH(6, 3), Turan(7, 3), CyclePower(9, 2), CliqueFactor(8, 3), PerfectMatching(4),
                 Custom(graph6_encode(petersen_graph()))):
        assert parse_family(str(spec)) == spec
    for bad in ("h:3", "cyclepower:6,3", "cliquefactor:7,2", "perfectmatching:5", "wheel:5", "h:a,b",
                "g6:bad!", "nocolon"):
        with pytest.raises(InvalidParameter):
            parse_family(bad)


def test_graph6_known_strings():
    # values from networkx's independent graph6 writer
    for g in (complete_graph(4), cycle_graph(5), petersen_graph(), path_graph(7), extremal_h(8, 2)):
        expected = nx.to_graph6_bytes(to_nx(g), header=False).decode().strip()
        assert graph6_encode(g) == expected
    assert graph6_encode(complete_graph(4)) == "C~"
    assert graph6_decode(">>graph6<<C~") == complete_graph(4)


def test_graph6_large_header():
    g = cycle_graph(100)
    s = graph6_encode(g)
    assert s[0] == "~"
    assert graph6_decode(s) == g
    assert s == nx.to_graph6_bytes(to_nx(g), header=False).decode().strip()


@given(graphs(1, 20))
def test_graph6_roundtrip(g):
    assert graph6_decode(graph6_encode(g)) == g


def test_graph6_malformed():
    with pytest.raises(MalformedGraph6, match="byte 1"):
        graph6_decode("D!!")
    with pytest.raises(MalformedGraph6):
        graph6_decode("")
    with pytest.raises(MalformedGraph6, match="expected"):
        graph6_decode("D~")  # n=5 needs 2 data bytes
    with pytest.raises(MalformedGraph6, match="padding"):
        graph6_decode("B@")  # n=2 uses one bit; the rest must be zero
    with pytest.raises(CapacityExceeded):
        graph6_decode(graph6_encode(empty_graph(512))[:1] + "~" * 0 + "~?H?")  # n = 513
    with pytest.raises(MalformedGraph6, match="line 2"):
        read_graph6_lines(["C~", "C!"])


def test_graph6_stream_roundtrip():
    gs = [complete_graph(3), petersen_graph(), extremal_h(9, 4)]
    text = write_graph6_lines(gs)
    assert read_graph6_lines(text.splitlines() + [""]) == gs


@given(graphs_with_perm(1, 10))
def test_relabel_preserves_structure(gp):
    g, perm = gp
    h = g.relabel(perm)
    assert h.edge_count == g.edge_count
    assert sorted(h.degrees()) == sorted(g.degrees())
    assert all(h.has_edge(perm[u], perm[v]) for u, v in g.edges())


@given(graphs(1, 12))
def test_clique_number_matches_networkx(g):
    expected = max((len(c) for c in nx.find_cliques(to_nx(g))), default=1)
    assert clique_number(g) == expected


@given(graphs(1, 12))
def test_components_match_networkx(g):
    ours = connected_components(g)
    theirs = sorted((sorted(c) for c in nx.connected_components(to_nx(g))), key=lambda c: c[0])
    assert ours == theirs
    assert is_connected(g) == nx.is_connected(to_nx(g))


@given(graphs(1, 10))
def test_complement_and_matrix(g):
    c = complement(g)
    assert c.edge_count + g.edge_count == g.n * (g.n - 1) // 2
    a = g.adjacency_matrix()
    assert np.array_equal(a, a.T) and np.all(np.diag(a) == 0)
    assert np.array_equal(a, nx.to_numpy_array(to_nx(g), nodelist=range(g.n)))
    assert Graph.from_matrix(a) == g


def test_join_and_union():
    g = join(complete_graph(2), empty_graph(3))
    assert g.edge_count == 1 + 6
    assert disjoint_union(cycle_graph(3), cycle_graph(4)).edge_count == 7


def test_clique_number_cap():
    with pytest.raises(CapacityExceeded):
        clique_number(empty_graph(65))


def test_degree_summary():
    s = degree_summary(extremal_h(7, 3))
    assert s.min_degree == 2 and s.max_degree == 6
    assert s.sorted_degrees[-1] == 2 and list(s.sorted_degrees) == sorted(s.sorted_degrees, reverse=True)
    assert math.isclose(sum(s.sorted_degrees) / 2, extremal_h(7, 3).edge_count)
