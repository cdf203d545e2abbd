"""Immutable simple graphs on bitset rows, with the standard operations and graph6 I/O.

Vertices are ``0..n-1``.  Row ``adj[i]`` is a Python int whose bit ``j`` is set
iff ``i`` and ``j`` are adjacent, so rows are arbitrarily wide and the
representation cap (``MAX_ORDER``) is a policy choice, not a storage limit.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import CapacityExceeded, InvalidParameter, MalformedGraph6

MAX_ORDER = 512
CLIQUE_CAP = 64


def _bits(x: int) -> Iterator[int]:
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def _check_order(n: int) -> None:
    if n < 1:
        raise InvalidParameter(f"graph order must be positive, got {n}")
    if n > MAX_ORDER:
        raise CapacityExceeded(f"graph order {n} exceeds cap {MAX_ORDER}")


class Graph:
    """A simple undirected graph.  Instances are immutable and hashable."""

    __slots__ = ("_n", "_adj", "_m")

    def __init__(self, n: int, adj: Sequence[int]):
        _check_order(n)
        if len(adj) != n:
            raise InvalidParameter(f"expected {n} adjacency rows, got {len(adj)}")
        full = (1 << n) - 1
        rows = tuple(int(r) for r in adj)
        total = 0
        for i, row in enumerate(rows):
            if row & ~full or row < 0:
                raise InvalidParameter(f"row {i} references a vertex outside 0..{n - 1}")
            if row >> i & 1:
                raise InvalidParameter(f"loop at vertex {i}")
            for j in _bits(row):
                if not rows[j] >> i & 1:
                    raise InvalidParameter(f"asymmetric adjacency between {i} and {j}")
            total += row.bit_count()
        self._n = n
        self._adj = rows
        self._m = total // 2

    @classmethod
    def _trusted(cls, n: int, adj: tuple[int, ...], m: int | None = None) -> "Graph":
        # Skips validation; callers guarantee symmetric, loop-free rows.
        g = object.__new__(cls)
        g._n = n
        g._adj = adj
        g._m = sum(r.bit_count() for r in adj) // 2 if m is None else m
        return g

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        _check_order(n)
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidParameter(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise InvalidParameter(f"loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls._trusted(n, tuple(rows))

    @classmethod
    def from_matrix(cls, a) -> "Graph":
        a = np.asarray(a)
        n = a.shape[0]
        rows = []
        for i in range(n):
            r = 0
            for j in np.flatnonzero(a[i]):
                r |= 1 << int(j)
            rows.append(r)
        return cls(n, rows)

    @property
    def n(self) -> int:
        return self._n

    @property
    def adj(self) -> tuple[int, ...]:
        return self._adj

    @property
    def edge_count(self) -> int:
        return self._m

    def __len__(self) -> int:
        return self._n

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._n == other._n and self._adj == other._adj

    def __hash__(self) -> int:
        return hash((self._n, self._adj))

    def __repr__(self) -> str:
        return f"Graph(n={self._n}, m={self._m}, g6={graph6_encode(self)!r})"

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self._adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self._adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [r.bit_count() for r in self._adj]

    def neighbors(self, v: int) -> list[int]:
        return list(_bits(self._adj[v]))

    def edges(self) -> Iterator[tuple[int, int]]:
        for i, row in enumerate(self._adj):
            for j in _bits(row >> (i + 1)):
                yield i, i + 1 + j

    def adjacency_matrix(self) -> np.ndarray:
        n = self._n
        nbytes = (n + 7) // 8
        raw = b"".join(r.to_bytes(nbytes, "little") for r in self._adj)
        bits = np.unpackbits(np.frombuffer(raw, dtype=np.uint8).reshape(n, nbytes), axis=1, bitorder="little")
        return bits[:, :n].astype(float)

    def is_complete(self) -> bool:
        return self._m == self._n * (self._n - 1) // 2

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Return the graph with vertex ``v`` renamed to ``perm[v]``."""
        n = self._n
        if sorted(perm) != list(range(n)):
            raise InvalidParameter("relabeling must be a permutation of 0..n-1")
        rows = [0] * n
        for v, row in enumerate(self._adj):
            r = 0
            for u in _bits(row):
                r |= 1 << perm[u]
            rows[perm[v]] = r
        return Graph._trusted(n, tuple(rows), self._m)

    def induced(self, vertices: Sequence[int]) -> "Graph":
        """Induced subgraph on ``vertices``, relabelled in the given order."""
        index = {v: i for i, v in enumerate(vertices)}
        rows = []
        for v in vertices:
            r = 0
            for u in _bits(self._adj[v]):
                if u in index:
                    r |= 1 << index[u]
            rows.append(r)
        return Graph._trusted(len(vertices), tuple(rows))

    def delete_vertex(self, v: int) -> "Graph":
        return self.induced([u for u in range(self._n) if u != v])

    def with_edge(self, u: int, v: int) -> "Graph":
        if u == v:
            raise InvalidParameter("loops are not allowed")
        if self.has_edge(u, v):
            return self
        rows = list(self._adj)
        rows[u] |= 1 << v
        rows[v] |= 1 << u
        return Graph._trusted(self._n, tuple(rows), self._m + 1)

    def without_edge(self, u: int, v: int) -> "Graph":
        if not self.has_edge(u, v):
            return self
        rows = list(self._adj)
        rows[u] &= ~(1 << v)
        rows[v] &= ~(1 << u)
        return Graph._trusted(self._n, tuple(rows), self._m - 1)


# -- elementary graphs ------------------------------------------------------

def empty_graph(n: int) -> Graph:
    _check_order(n)
    return Graph._trusted(n, (0,) * n, 0)


def complete_graph(n: int) -> Graph:
    _check_order(n)
    full = (1 << n) - 1
    return Graph._trusted(n, tuple(full ^ (1 << i) for i in range(n)), n * (n - 1) // 2)


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise InvalidParameter("a cycle needs at least 3 vertices")
    return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def complete_multipartite(sizes: Sequence[int]) -> Graph:
    n = sum(sizes)
    _check_order(n)
    part = []
    for p, s in enumerate(sizes):
        part.extend([p] * s)
    return Graph.from_edges(n, ((i, j) for i in range(n) for j in range(i + 1, n) if part[i] != part[j]))


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


# -- operations -------------------------------------------------------------

def disjoint_union(g: Graph, h: Graph) -> Graph:
    n = g.n + h.n
    if n > MAX_ORDER:
        raise CapacityExceeded(f"union order {n} exceeds cap {MAX_ORDER}")
    shift = g.n
    rows = g.adj + tuple(r << shift for r in h.adj)
    return Graph._trusted(n, rows, g.edge_count + h.edge_count)


def join(g: Graph, h: Graph) -> Graph:
    """Disjoint union of ``g`` and ``h`` plus every edge between them."""
    n = g.n + h.n
    if n > MAX_ORDER:
        raise CapacityExceeded(f"join order {n} exceeds cap {MAX_ORDER}")
    shift = g.n
    left = (1 << shift) - 1
    right = ((1 << h.n) - 1) << shift
    rows = tuple(r | right for r in g.adj) + tuple((r << shift) | left for r in h.adj)
    return Graph._trusted(n, rows, g.edge_count + h.edge_count + g.n * h.n)


def complement(g: Graph) -> Graph:
    n = g.n
    full = (1 << n) - 1
    rows = tuple(full ^ r ^ (1 << i) for i, r in enumerate(g.adj))
    return Graph._trusted(n, rows, n * (n - 1) // 2 - g.edge_count)


# -- degree structure and connectivity --------------------------------------

@dataclass(frozen=True)
class DegreeSummary:
    sorted_degrees: tuple[int, ...]
    min_degree: int
    max_degree: int


def degree_summary(g: Graph) -> DegreeSummary:
    degs = tuple(sorted(g.degrees(), reverse=True))
    return DegreeSummary(degs, degs[-1], degs[0])


def connected_components(g: Graph) -> list[list[int]]:
    """Vertex sets of the components, each sorted, ordered by smallest vertex."""
    seen = 0
    comps = []
    for s in range(g.n):
        if seen >> s & 1:
            continue
        comp = 1 << s
        frontier = comp
        while frontier:
            nxt = 0
            for v in _bits(frontier):
                nxt |= g.adj[v]
            frontier = nxt & ~comp
            comp |= frontier
        seen |= comp
        comps.append(list(_bits(comp)))
    return comps


def is_connected(g: Graph) -> bool:
    return len(connected_components(g)) == 1


def clique_number(g: Graph) -> int:
    """Exact clique number by branch and bound with greedy-colouring bounds."""
    if g.n > CLIQUE_CAP:
        raise CapacityExceeded(f"clique_number is capped at n={CLIQUE_CAP}, got {g.n}")
    adj = g.adj
    best = 1 if g.edge_count == 0 else 2

    def colour_order(p: int) -> tuple[list[int], list[int]]:
        order, bounds = [], []
        colour = 0
        uncoloured = p
        while uncoloured:
            colour += 1
            q = uncoloured
            while q:
                low = q & -q
                v = low.bit_length() - 1
                q &= ~adj[v] & ~low
                uncoloured &= ~low
                order.append(v)
                bounds.append(colour)
        return order, bounds

    def expand(size: int, p: int) -> None:
        nonlocal best
        order, bounds = colour_order(p)
        for i in range(len(order) - 1, -1, -1):
            if size + bounds[i] <= best:
                return
            v = order[i]
            sub = p & adj[v]
            if sub:
                expand(size + 1, sub)
            elif size + 1 > best:
                best = size + 1
            p &= ~(1 << v)

    if g.edge_count:
        expand(0, (1 << g.n) - 1)
    return best


# -- graph6 -----------------------------------------------------------------

def _size_header(n: int) -> str:
    if n < 63:
        return chr(n + 63)
    if n <= 258047:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    raise CapacityExceeded(f"graph6 header for n={n} not supported")


def graph6_encode(g: Graph) -> str:
    n = g.n
    adj = g.adj
    out = [_size_header(n)]
    acc = 0
    nbits = 0
    for j in range(1, n):
        for i in range(j):
            acc = acc << 1 | (adj[i] >> j & 1)
            nbits += 1
            if nbits == 6:
                out.append(chr(acc + 63))
                acc = nbits = 0
    if nbits:
        out.append(chr((acc << (6 - nbits)) + 63))
    return "".join(out)


def graph6_decode(s: str) -> Graph:
    s = s.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if not s:
        raise MalformedGraph6("empty graph6 string")
    for pos, ch in enumerate(s):
        if not 63 <= ord(ch) <= 126:
            raise MalformedGraph6(f"byte {pos}: character {ch!r} outside the graph6 range 63..126")
    vals = [ord(ch) - 63 for ch in s]
    if vals[0] == 63:
        if len(vals) >= 2 and vals[1] == 63:
            raise CapacityExceeded("graph6 8-byte header (n > 258047) is beyond the order cap")
        if len(vals) < 4:
            raise MalformedGraph6("byte 0: truncated size header")
        n = vals[1] << 12 | vals[2] << 6 | vals[3]
        body = vals[4:]
        offset = 4
    else:
        n = vals[0]
        body = vals[1:]
        offset = 1
    if n == 0:
        raise MalformedGraph6("byte 0: graph6 order 0 is not a valid graph here")
    if n > MAX_ORDER:
        raise CapacityExceeded(f"graph6 order {n} exceeds cap {MAX_ORDER}")
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    if len(body) != need:
        raise MalformedGraph6(
            f"byte {offset + min(len(body), need)}: expected {need} data bytes for n={n}, got {len(body)}")
    pad = need * 6 - nbits
    if pad and body[-1] & ((1 << pad) - 1):
        raise MalformedGraph6(f"byte {offset + need - 1}: nonzero padding bits")
    rows = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            if body[k // 6] >> (5 - k % 6) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
    return Graph._trusted(n, tuple(rows))


def read_graph6_lines(lines: Iterable[str]) -> list[Graph]:
    """Decode a newline-delimited graph6 stream; blank lines are skipped.

    Errors are re-raised with the 1-based line number prepended.
    """
    graphs = []
    for lineno, line in enumerate(lines, 1):
        text = line.strip()
        if not text:
            continue
        try:
            graphs.append(graph6_decode(text))
        except MalformedGraph6 as exc:
            raise MalformedGraph6(f"line {lineno}, {exc}") from None
    return graphs


def write_graph6_lines(graphs: Iterable[Graph]) -> str:
    return "".join(graph6_encode(g) + "\n" for g in graphs)
