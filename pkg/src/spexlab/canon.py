"""Canonical labelling by colour refinement plus individualisation search.

The search explores every leaf of the individualisation-refinement tree that
is not pruned by an automorphism already in hand (twin transpositions and
automorphisms discovered at equal leaves).  The canonical leaf is the one
with the smallest adjacency key, so the result does not depend on input
labels.  Automorphisms found along the way generate the full group.
"""

from __future__ import annotations

from .errors import CapacityExceeded
from .graph import Graph, _bits, graph6_encode

CANON_CAP = 64


def degree_partition(adj: tuple[int, ...], n: int) -> list[list[int]]:
    by_deg: dict[int, list[int]] = {}
    for v in range(n):
        by_deg.setdefault(adj[v].bit_count(), []).append(v)
    return [by_deg[d] for d in sorted(by_deg)]


def refine(adj: tuple[int, ...], cells: list[list[int]]) -> list[list[int]]:
    """Coarsest equitable refinement; sub-cells are ordered by neighbour-count signature."""
    while True:
        masks = []
        for c in cells:
            m = 0
            for v in c:
                m |= 1 << v
            masks.append(m)
        out = []
        split = False
        for c in cells:
            if len(c) == 1:
                out.append(c)
                continue
            groups: dict[tuple[int, ...], list[int]] = {}
            for v in c:
                a = adj[v]
                groups.setdefault(tuple([(a & m).bit_count() for m in masks]), []).append(v)
            if len(groups) == 1:
                out.append(c)
            else:
                split = True
                out.extend(groups[k] for k in sorted(groups))
        cells = out
        if not split:
            return cells


def leaf_key(adj: tuple[int, ...], order: list[int]) -> int:
    """Lower-triangle adjacency bits of the graph relabelled by ``order`` (position -> vertex)."""
    n = len(order)
    pos = [0] * n
    for i, v in enumerate(order):
        pos[v] = i
    key = 0
    for j in range(1, n):
        col = 0
        for u in _bits(adj[order[j]]):
            p = pos[u]
            if p < j:
                col |= 1 << p
        key = (key << j) | col
    return key


class _Search:
    __slots__ = ("adj", "n", "best_key", "best_order", "autos", "_auto_set")

    def __init__(self, adj: tuple[int, ...], n: int):
        self.adj = adj
        self.n = n
        self.best_key: int | None = None
        self.best_order: list[int] | None = None
        self.autos: list[tuple[int, ...]] = []
        self._auto_set: set[tuple[int, ...]] = set()

    def _add_auto(self, perm: tuple[int, ...]) -> None:
        if perm not in self._auto_set:
            self._auto_set.add(perm)
            self.autos.append(perm)

    def run(self, cells: list[list[int]], prefix: list[int]) -> None:
        adj = self.adj
        cells = refine(adj, cells)
        n = self.n
        if len(cells) == n:
            order = [c[0] for c in cells]
            key = leaf_key(adj, order)
            if self.best_key is None or key < self.best_key:
                self.best_key = key
                self.best_order = order
            elif key == self.best_key:
                perm = [0] * n
                for a, b in zip(order, self.best_order):
                    perm[a] = b
                self._add_auto(tuple(perm))
            return
        ti = min((i for i, c in enumerate(cells) if len(c) > 1), key=lambda i: len(cells[i]))
        target = cells[ti]
        # twin transpositions inside the target cell fix every other vertex;
        # twinhood is an equivalence, so linking each vertex to its class's first member suffices
        reps: list[int] = []
        for b in target:
            for a in reps:
                if adj[a] & ~(1 << b) == adj[b] & ~(1 << a):
                    perm = list(range(n))
                    perm[a], perm[b] = b, a
                    self._add_auto(tuple(perm))
                    break
            else:
                reps.append(b)
        tried: list[int] = []
        seen_autos = -1
        orbit: dict[int, int] = {}
        for v in target:
            if tried:
                if len(self.autos) != seen_autos:
                    seen_autos = len(self.autos)
                    orbit = self._orbits(target, prefix)
                if orbit[v] in {orbit[t] for t in tried}:
                    continue
            tried.append(v)
            rest = [u for u in target if u != v]
            child = cells[:ti] + [[v], rest] + cells[ti + 1:]
            prefix.append(v)
            self.run(child, prefix)
            prefix.pop()

    def _orbits(self, cell: list[int], prefix: list[int]) -> dict[int, int]:
        """Orbit label of each cell vertex under the known automorphisms fixing ``prefix`` pointwise."""
        parent = {u: u for u in cell}

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for g in self.autos:
            if any(g[p] != p for p in prefix):
                continue
            for u in cell:
                ru, rg = find(u), find(g[u])
                if ru != rg:
                    parent[ru] = rg
        return {u: find(u) for u in cell}


def _check(g: Graph) -> None:
    if g.n > CANON_CAP:
        raise CapacityExceeded(f"canonical labelling is capped at n={CANON_CAP}, got {g.n}")


def canonical_search(g: Graph) -> _Search:
    _check(g)
    s = _Search(g.adj, g.n)
    s.run(degree_partition(g.adj, g.n), [])
    return s


def canonical_order(g: Graph) -> list[int]:
    """Vertices listed in canonical position order."""
    return canonical_search(g).best_order


def canonical_graph(g: Graph) -> Graph:
    order = canonical_order(g)
    perm = [0] * g.n
    for i, v in enumerate(order):
        perm[v] = i
    return g.relabel(perm)


def canonical_form(g: Graph) -> str:
    """graph6 string of the canonical relabelling; equal iff the inputs are isomorphic."""
    return graph6_encode(canonical_graph(g))


def automorphism_generators(g: Graph) -> list[tuple[int, ...]]:
    return canonical_search(g).autos


def rooted_key(adj: tuple[int, ...], n: int, cells: list[list[int]], v: int) -> int:
    """Smallest leaf key below the node where ``v`` is individualised from ``cells``."""
    out = []
    for c in cells:
        if v in c:
            out.append([v])
            rest = [u for u in c if u != v]
            if rest:
                out.append(rest)
        else:
            out.append(c)
    s = _Search(adj, n)
    s.run(out, [v])
    return s.best_key
