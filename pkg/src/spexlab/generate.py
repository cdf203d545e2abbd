"""Isomorph-free generation of simple graphs by canonical vertex augmentation.

Each representative on k vertices is extended by a new vertex ``k`` joined to
one subset from every orbit of the parent's automorphism group.  A child is
kept iff the new vertex lies in the canonically chosen orbit: among the
vertices of maximum degree, the last cell of the equitable partition, and
within that cell the vertices of smallest rooted canonical key.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Iterator

from .canon import canonical_search, degree_partition, refine, rooted_key
from .errors import CapacityExceeded, InvalidParameter
from .graph import Graph, _bits

GENERATE_CAP = 10
# counts of isomorphism classes of simple graphs, OEIS A000088
KNOWN_COUNTS = {1: 1, 2: 2, 3: 4, 4: 11, 5: 34, 6: 156, 7: 1044, 8: 12346, 9: 274668, 10: 12005168}


def _masks(k: int, min_size: int, max_size: int) -> Iterator[int]:
    if min_size <= 0 and max_size >= k:
        yield from range(1 << k)
        return
    for size in range(max(min_size, 0), min(max_size, k) + 1):
        for combo in itertools.combinations(range(k), size):
            mask = 0
            for u in combo:
                mask |= 1 << u
            yield mask


def subset_orbit_representatives(k: int, gens: list[tuple[int, ...]],
                                  min_size: int = 0, max_size: int | None = None) -> list[int]:
    """One mask per orbit of subsets of ``range(k)`` under ``gens``, sizes limited to [min_size, max_size].

    Without size limits the representative is the smallest mask of its orbit.
    """
    max_size = k if max_size is None else max_size
    if not gens:
        return list(_masks(k, min_size, max_size))
    images = []
    for g in gens:
        single = [1 << g[u] for u in range(k)]
        images.append(single)
    seen: bytearray | set = bytearray(1 << k) if min_size <= 0 and max_size >= k else set()
    reps = []
    for mask in _masks(k, min_size, max_size):
        if mask in seen if isinstance(seen, set) else seen[mask]:
            continue
        reps.append(mask)
        _mark(seen, mask)
        stack = [mask]
        while stack:
            s = stack.pop()
            for single in images:
                t = 0
                x = s
                while x:
                    low = x & -x
                    t |= single[low.bit_length() - 1]
                    x ^= low
                if not (t in seen if isinstance(seen, set) else seen[t]):
                    _mark(seen, t)
                    stack.append(t)
    return reps


def _mark(seen, mask: int) -> None:
    if isinstance(seen, set):
        seen.add(mask)
    else:
        seen[mask] = 1


def _accept(rows: tuple[int, ...], n: int, v: int, dv: int, candidates: int) -> bool:
    # candidates: bitmask of max-degree vertices other than v
    if not candidates:
        return True
    cells = refine(rows, degree_partition(rows, n))
    last = cells[-1]
    if v not in last:
        return False
    if len(last) == 1:
        return True
    av = rows[v]
    others = [c for c in last if c != v and (rows[c] & ~(1 << v)) != (av & ~(1 << c))]
    if not others:
        return True
    kv = rooted_key(rows, n, cells, v)
    for c in others:
        if rooted_key(rows, n, cells, c) < kv:
            return False
    return True


def children(parent: Graph, gens: list[tuple[int, ...]] | None = None,
             max_edges: int | None = None) -> Iterator[Graph]:
    """Canonical one-vertex extensions of ``parent`` (new vertex gets index ``parent.n``)."""
    k = parent.n
    n = k + 1
    adj = parent.adj
    deg = [r.bit_count() for r in adj]
    if gens is None:
        gens = canonical_search(parent).autos
    above = [0] * (k + 2)  # above[d]: vertices with degree > d
    equal = [0] * (k + 2)
    below = [0] * (k + 2)  # below[d]: vertices with degree == d - 1
    for d in range(k + 2):
        for u in range(k):
            if deg[u] > d:
                above[d] |= 1 << u
            elif deg[u] == d:
                equal[d] |= 1 << u
            elif deg[u] == d - 1:
                below[d] |= 1 << u
    m = parent.edge_count
    vbit = 1 << k
    # the new vertex must have maximum degree, and the edge limit caps its degree
    low = max(deg, default=0)
    high = k if max_edges is None else min(k, max_edges - m)
    for mask in subset_orbit_representatives(k, gens, low, high):
        dv = mask.bit_count()
        if max_edges is not None and m + dv > max_edges:
            continue
        if above[dv] or equal[dv] & mask:
            continue
        rows = list(adj)
        for u in _bits(mask):
            rows[u] |= vbit
        rows.append(mask)
        rows = tuple(rows)
        candidates = (equal[dv] & ~mask) | (below[dv] & mask)
        if _accept(rows, n, k, dv, candidates):
            yield Graph._trusted(n, rows, m + dv)


@lru_cache(maxsize=None)
def _level(n: int, max_edges: int | None) -> tuple[tuple[Graph, tuple], ...]:
    # (graph, automorphism generators) pairs, cached for reuse as parents
    if n == 1:
        return ((Graph._trusted(1, (0,), 0), ()),)
    out = []
    for p, gens in _level(n - 1, max_edges):
        for c in children(p, list(gens), max_edges):
            out.append((c, tuple(canonical_search(c).autos)))
    return tuple(out)


def parents(n: int, max_edges: int | None = None) -> list[tuple[Graph, list]]:
    """Representatives on ``n - 1`` vertices with automorphism generators; the partition unit."""
    if n < 2:
        raise InvalidParameter("parents exist only for n >= 2")
    return [(g, list(a)) for g, a in _level(n - 1, max_edges)]


def parent_count(n: int, max_edges: int | None = None) -> int:
    return len(_level(n - 1, max_edges)) if n >= 2 else 0


def parent(n: int, index: int, max_edges: int | None = None) -> tuple[Graph, list]:
    """The ``index``-th partition unit of ``parents(n, max_edges)``."""
    g, gens = _level(n - 1, max_edges)[index]
    return g, list(gens)


def generate_graphs(n: int, max_edges: int | None = None, cap: int = GENERATE_CAP) -> Iterator[Graph]:
    """Yield one graph per isomorphism class on ``n`` vertices (optionally with at most ``max_edges`` edges)."""
    if n < 1:
        raise InvalidParameter(f"n must be positive, got {n}")
    if n > cap:
        raise CapacityExceeded(f"generation is capped at n={cap}, got {n}")
    if n == 1:
        yield Graph._trusted(1, (0,), 0)
        return
    for p, gens in _level(n - 1, max_edges):
        yield from children(p, list(gens), max_edges)
