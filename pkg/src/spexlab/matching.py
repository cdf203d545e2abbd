"""Maximum cardinality matching in general graphs (Edmonds' blossom shrinking)."""

from __future__ import annotations

from collections import deque
from typing import Sequence


def _greedy(n: int, adj: Sequence[Sequence[int]], mate: list[int]) -> None:
    # cheap start: low-degree vertices first, each to its free neighbour of least degree
    for v in sorted(range(n), key=lambda v: len(adj[v])):
        if mate[v] != -1:
            continue
        best = -1
        for u in adj[v]:
            if mate[u] == -1 and (best == -1 or len(adj[u]) < len(adj[best])):
                best = u
        if best != -1:
            mate[v], mate[best] = best, v


def _augment_from(root: int, n: int, adj: Sequence[Sequence[int]], mate: list[int]) -> bool:
    parent = [-1] * n
    base = list(range(n))
    used = [False] * n
    used[root] = True
    queue = deque([root])

    def lca(a: int, b: int) -> int:
        seen = [False] * n
        while True:
            a = base[a]
            seen[a] = True
            if mate[a] == -1:
                break
            a = parent[mate[a]]
        while True:
            b = base[b]
            if seen[b]:
                return b
            b = parent[mate[b]]

    def mark_path(v: int, b: int, child: int, blossom: list[bool]) -> None:
        while base[v] != b:
            blossom[base[v]] = blossom[base[mate[v]]] = True
            parent[v] = child
            child = mate[v]
            v = parent[mate[v]]

    while queue:
        v = queue.popleft()
        for to in adj[v]:
            if base[v] == base[to] or mate[v] == to:
                continue
            if to == root or (mate[to] != -1 and parent[mate[to]] != -1):
                cur = lca(v, to)
                blossom = [False] * n
                mark_path(v, cur, to, blossom)
                mark_path(to, cur, v, blossom)
                for i in range(n):
                    if blossom[base[i]]:
                        base[i] = cur
                        if not used[i]:
                            used[i] = True
                            queue.append(i)
            elif parent[to] == -1:
                parent[to] = v
                if mate[to] == -1:
                    while to != -1:
                        pv = parent[to]
                        nxt = mate[pv]
                        mate[to], mate[pv] = pv, to
                        to = nxt
                    return True
                used[mate[to]] = True
                queue.append(mate[to])
    return False


def maximum_matching(n: int, adj: Sequence[Sequence[int]], stop_on_exposed: bool = False,
                     initial: Sequence[int] | None = None) -> list[int]:
    """Return ``mate`` with ``mate[v]`` the partner of ``v`` or -1.

    ``initial`` is an optional valid partial matching to start from; it is
    topped up greedily.  With ``stop_on_exposed`` the search ends at the first
    vertex that no augmenting path can reach, which is enough to decide
    perfectness.
    """
    mate = list(initial) if initial is not None else [-1] * n
    _greedy(n, adj, mate)
    for v in range(n):
        if mate[v] == -1 and not _augment_from(v, n, adj, mate) and stop_on_exposed:
            break
    return mate


def has_perfect_matching(n: int, adj: Sequence[Sequence[int]]) -> bool:
    if n % 2:
        return False
    return all(m != -1 for m in maximum_matching(n, adj, stop_on_exposed=True))
