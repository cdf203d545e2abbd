"""Spanning-subgraph containment and degree-constrained factors.

``contains_spanning`` backtracks over bijections V(F) -> V(G) with bitset
domains, most-constrained-variable ordering and forward checking.  Factor
questions go through a gadget reduction to perfect matching.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import BudgetExceeded, CapacityExceeded, InvalidQuery, OrderMismatch
from .graph import Graph, _bits
from .matching import maximum_matching

DEFAULT_BUDGET = 10**8
BRUTEFORCE_CAP = 8


@dataclass(frozen=True)
class EmbeddingWitness:
    """``mapping[u]`` is the host vertex carrying pattern vertex ``u``."""

    mapping: tuple[int, ...]

    def verify(self, g: Graph, f: Graph) -> bool:
        m = self.mapping
        if sorted(m) != list(range(g.n)) or len(m) != f.n:
            return False
        return all(g.has_edge(m[u], m[v]) for u, v in f.edges())


def _same_order(g: Graph, f: Graph) -> None:
    if g.n != f.n:
        raise OrderMismatch(f"host has {g.n} vertices, pattern has {f.n}")


def sorted_degree_dominance(g: Graph, f: Graph) -> bool:
    """True iff the i-th largest F-degree is at most the i-th largest G-degree for every i."""
    _same_order(g, f)
    dg = sorted(g.degrees(), reverse=True)
    df = sorted(f.degrees(), reverse=True)
    return all(a <= b for a, b in zip(df, dg))


def contains_spanning(g: Graph, f: Graph, budget: int = DEFAULT_BUDGET) -> EmbeddingWitness | None:
    """Find a bijection carrying every edge of ``f`` onto an edge of ``g``.

    Returns None when no embedding exists.  Raises BudgetExceeded after
    ``budget`` node expansions.
    """
    _same_order(g, f)
    n = g.n
    if f.edge_count > g.edge_count or not sorted_degree_dominance(g, f):
        return None
    gadj, fadj = g.adj, f.adj
    gdeg = g.degrees()
    fdeg = f.degrees()
    domains = []
    for u in range(n):
        d = 0
        for v in range(n):
            if gdeg[v] >= fdeg[u]:
                d |= 1 << v
        domains.append(d)
    mapping = [-1] * n
    expansions = 0

    def solve(doms: list[int], unassigned: int) -> bool:
        nonlocal expansions
        if not unassigned:
            return True
        # most constrained pattern vertex; ties go to larger degree, then lower index
        best = -1
        best_key = None
        for u in _bits(unassigned):
            key = (doms[u].bit_count(), -fdeg[u], u)
            if best_key is None or key < best_key:
                best, best_key = u, key
        u = best
        rest = unassigned & ~(1 << u)
        nbrs = fadj[u] & rest
        for v in _bits(doms[u]):
            expansions += 1
            if expansions > budget:
                raise BudgetExceeded(f"embedding search exceeded {budget} expansions", expansions)
            vbit = ~(1 << v)
            host = gadj[v]
            new = doms[:]
            ok = True
            singles = 0
            for w in _bits(rest):
                dw = new[w] & vbit
                if nbrs >> w & 1:
                    dw &= host
                if not dw:
                    ok = False
                    break
                if dw & (dw - 1) == 0:
                    if singles & dw:
                        ok = False
                        break
                    singles |= dw
                new[w] = dw
            if not ok:
                continue
            mapping[u] = v
            if solve(new, rest):
                return True
            mapping[u] = -1
        return False

    if solve(domains, (1 << n) - 1):
        return EmbeddingWitness(tuple(mapping))
    return None


@lru_cache(maxsize=None)
def _permutations(n: int) -> np.ndarray:
    return np.array(list(itertools.permutations(range(n))), dtype=np.int16).reshape(-1, n)


def contains_spanning_bruteforce(g: Graph, f: Graph) -> EmbeddingWitness | None:
    """Exhaustive check over all n! bijections; the first one in lexicographic order wins."""
    _same_order(g, f)
    n = g.n
    if n > BRUTEFORCE_CAP:
        raise CapacityExceeded(f"brute-force embedding is capped at n={BRUTEFORCE_CAP}")
    perms = _permutations(n)
    a = g.adjacency_matrix().astype(bool)
    ok = np.ones(len(perms), dtype=bool)
    for u, v in f.edges():
        ok &= a[perms[:, u], perms[:, v]]
    hits = np.flatnonzero(ok)
    if hits.size == 0:
        return None
    return EmbeddingWitness(tuple(int(x) for x in perms[hits[0]]))


# -- [a, b]-factors -------------------------------------------------------------

@dataclass(frozen=True)
class FactorQuery:
    a: int
    b: int

    def __post_init__(self):
        if self.a < 0 or self.b < self.a:
            raise InvalidQuery(f"need 0 <= a <= b, got a={self.a}, b={self.b}")


def _factor_gadget(g: Graph, a: int, b: int):
    """Auxiliary graph with a perfect matching iff ``g`` has an [a, b]-factor.

    Each edge uv gives two linked ports (one per end); matching the link
    selects the edge.  A vertex of degree below a contributes an isolated
    vertex, so no perfect matching exists.  Otherwise vertex v has d(v) - a inner vertices absorbing its
    unselected ports, and min(b, d(v)) - a slack vertices that either pair
    with inner vertices or drain into a shared clique whose size fixes the
    global parity.
    """
    edges = list(g.edges())
    adj: list[list[int]] = []

    def new_vertex() -> int:
        adj.append([])
        return len(adj) - 1

    def link(x: int, y: int) -> None:
        adj[x].append(y)
        adj[y].append(x)

    ports: list[list[int]] = [[] for _ in range(g.n)]
    port_pairs = []
    for u, v in edges:
        pu, pv = new_vertex(), new_vertex()
        link(pu, pv)
        ports[u].append(pu)
        ports[v].append(pv)
        port_pairs.append((pu, pv))
    slack_all = []
    start: dict[int, int] = {}  # warm start: inner->port, slack->sink, spare ports linked
    for v in range(g.n):
        d = len(ports[v])
        if d < a:
            new_vertex()  # unmatchable: v cannot reach degree a
            continue
        inner = [new_vertex() for _ in range(d - a)]
        slack = [new_vertex() for _ in range(min(b, d) - a)]
        for i in inner:
            for p in ports[v]:
                link(i, p)
            for s in slack:
                link(i, s)
        for i, p in zip(inner, ports[v]):
            start[i], start[p] = p, i
        slack_all.extend(slack)
    sink = [new_vertex() for _ in range(len(slack_all) + (g.n * a) % 2)]
    for i, x in enumerate(sink):
        for y in sink[i + 1:]:
            link(x, y)
        for s in slack_all:
            link(x, s)
    for s, x in zip(slack_all, sink):
        start[s], start[x] = x, s
    for pu, pv in port_pairs:
        if pu not in start and pv not in start:
            start[pu], start[pv] = pv, pu
    mate = [-1] * len(adj)
    for x, y in start.items():
        mate[x] = y
    return adj, edges, port_pairs, mate


def find_factor(g: Graph, query: FactorQuery, precheck: bool = True) -> list[tuple[int, int]] | None:
    """Edges of an [a, b]-factor of ``g``, or None if there is none."""
    a, b = query.a, query.b
    if a == 0:
        return []
    if precheck and min(g.degrees()) < a:
        return None
    adj, edges, port_pairs, start = _factor_gadget(g, a, b)
    size = len(adj)
    if size % 2:
        return None
    mate = maximum_matching(size, adj, stop_on_exposed=True, initial=start)
    if any(m == -1 for m in mate):
        return None
    return [e for e, (pu, pv) in zip(edges, port_pairs) if mate[pu] == pv]


def has_factor(g: Graph, query: FactorQuery, precheck: bool = True) -> bool:
    """True iff ``g`` has a spanning subgraph with every degree in [a, b].

    ``precheck`` rejects a host with a vertex of degree below ``a`` before the
    matching reduction runs; switching it off forces the reduction.
    """
    return find_factor(g, query, precheck) is not None


def has_factor_backtracking(g: Graph, query: FactorQuery) -> bool:
    """Independent oracle: decide each edge in turn with degree-window pruning."""
    a, b = query.a, query.b
    edges = list(g.edges())
    n = g.n
    deg = [0] * n
    remaining = g.degrees()

    def go(i: int) -> bool:
        if i == len(edges):
            return all(a <= d <= b for d in deg)
        u, v = edges[i]
        remaining[u] -= 1
        remaining[v] -= 1
        found = False
        if deg[u] < b and deg[v] < b:
            deg[u] += 1
            deg[v] += 1
            if deg[u] + remaining[u] >= a and deg[v] + remaining[v] >= a:
                found = go(i + 1)
            deg[u] -= 1
            deg[v] -= 1
        if not found and deg[u] + remaining[u] >= a and deg[v] + remaining[v] >= a:
            found = go(i + 1)
        remaining[u] += 1
        remaining[v] += 1
        return found

    if any(d < a for d in remaining):
        return False
    return go(0)
