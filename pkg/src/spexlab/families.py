"""Named graph families and the ``kind:params`` string grammar used on the command line.

Grammar::

    h:n,k | turan:n,r | cyclepower:n,k | cliquefactor:n,r | perfectmatching:n | g6:<string>
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidParameter, MalformedGraph6
from .graph import (
    Graph,
    _check_order,
    complete_graph,
    complete_multipartite,
    disjoint_union,
    empty_graph,
    graph6_decode,
    graph6_encode,
    join,
)


@dataclass(frozen=True)
class ExtremalH:
    """``H_{n,k}``: an (n-1)-clique plus vertex ``n-1`` joined to vertices ``0..k-2``."""

    n: int
    k: int

    def validate(self) -> None:
        _check_order(self.n)
        if not 1 <= self.k <= self.n:
            raise InvalidParameter(f"ExtremalH needs 1 <= k <= n, got n={self.n}, k={self.k}")

    def build(self) -> Graph:
        self.validate()
        n, k = self.n, self.k
        clique = (1 << (n - 1)) - 1
        hub = (1 << (k - 1)) - 1
        w = n - 1
        rows = []
        for i in range(n - 1):
            r = clique ^ (1 << i)
            if i < k - 1:
                r |= 1 << w
            rows.append(r)
        rows.append(hub)
        return Graph._trusted(n, tuple(rows), (n - 1) * (n - 2) // 2 + k - 1)

    def __str__(self) -> str:
        return f"h:{self.n},{self.k}"


@dataclass(frozen=True)
class Turan:
    n: int
    r: int

    def validate(self) -> None:
        _check_order(self.n)
        if not 1 <= self.r <= self.n:
            raise InvalidParameter(f"Turan needs 1 <= r <= n, got n={self.n}, r={self.r}")

    def build(self) -> Graph:
        self.validate()
        q, extra = divmod(self.n, self.r)
        sizes = [q + 1] * extra + [q] * (self.r - extra)
        return complete_multipartite(sizes)

    def __str__(self) -> str:
        return f"turan:{self.n},{self.r}"


@dataclass(frozen=True)
class CyclePower:
    """k-th power of the n-cycle: ``i ~ j`` iff their circular distance is at most k."""

    n: int
    k: int

    def validate(self) -> None:
        _check_order(self.n)
        if self.k < 1:
            raise InvalidParameter(f"CyclePower needs k >= 1, got {self.k}")
        if self.n < 3 or 2 * self.k >= self.n:
            raise InvalidParameter(f"CyclePower needs n >= 3 and k < n/2, got n={self.n}, k={self.k}")

    def build(self) -> Graph:
        self.validate()
        n, k = self.n, self.k
        edges = [(i, (i + d) % n) for i in range(n) for d in range(1, k + 1)]
        return Graph.from_edges(n, edges)

    def __str__(self) -> str:
        return f"cyclepower:{self.n},{self.k}"


@dataclass(frozen=True)
class CliqueFactor:
    """``(n/(r+1)) K_{r+1}``: disjoint cliques on consecutive blocks of r+1 vertices."""

    n: int
    r: int

    def validate(self) -> None:
        _check_order(self.n)
        if self.r < 1:
            raise InvalidParameter(f"CliqueFactor needs r >= 1, got {self.r}")
        if self.n % (self.r + 1):
            raise InvalidParameter(f"CliqueFactor needs (r+1) | n, got n={self.n}, r={self.r}")

    def build(self) -> Graph:
        self.validate()
        block = complete_graph(self.r + 1)
        g = block
        for _ in range(self.n // (self.r + 1) - 1):
            g = disjoint_union(g, block)
        return g

    def __str__(self) -> str:
        return f"cliquefactor:{self.n},{self.r}"


@dataclass(frozen=True)
class PerfectMatching:
    n: int

    def validate(self) -> None:
        _check_order(self.n)
        if self.n % 2:
            raise InvalidParameter(f"PerfectMatching needs even n, got {self.n}")

    def build(self) -> Graph:
        self.validate()
        return CliqueFactor(self.n, 1).build()

    def __str__(self) -> str:
        return f"perfectmatching:{self.n}"


@dataclass(frozen=True)
class Custom:
    graph6: str

    @property
    def n(self) -> int:
        return graph6_decode(self.graph6).n

    def validate(self) -> None:
        graph6_decode(self.graph6)

    def build(self) -> Graph:
        return graph6_decode(self.graph6)

    def __str__(self) -> str:
        return f"g6:{self.graph6}"


FamilySpec = ExtremalH | Turan | CyclePower | CliqueFactor | PerfectMatching | Custom


def build(spec: FamilySpec) -> Graph:
    return spec.build()


def extremal_h(n: int, k: int) -> Graph:
    return ExtremalH(n, k).build()


def h_as_join(n: int, k: int) -> Graph:
    """``K_{k-1} v (K_{n-k} u K_1)`` assembled literally from joins and unions."""
    inner = disjoint_union(complete_graph(n - k), empty_graph(1)) if n > k else empty_graph(1)
    if k == 1:
        return inner
    return join(complete_graph(k - 1), inner)


_KINDS = {
    "h": (ExtremalH, 2),
    "turan": (Turan, 2),
    "cyclepower": (CyclePower, 2),
    "cliquefactor": (CliqueFactor, 2),
    "perfectmatching": (PerfectMatching, 1),
}


def parse_family(text: str) -> FamilySpec:
    """Parse the ``kind:params`` grammar; raises InvalidParameter on bad input."""
    kind, sep, rest = text.strip().partition(":")
    kind = kind.lower()
    if not sep:
        raise InvalidParameter(f"family spec {text!r} lacks a ':'")
    if kind == "g6":
        try:
            graph6_decode(rest)
        except MalformedGraph6 as exc:
            raise InvalidParameter(f"family spec {text!r}: {exc}") from None
        return Custom(rest.strip())
    if kind not in _KINDS:
        raise InvalidParameter(f"unknown family kind {kind!r}")
    cls, arity = _KINDS[kind]
    try:
        args = [int(p) for p in rest.split(",")]
    except ValueError:
        raise InvalidParameter(f"family spec {text!r}: parameters must be integers") from None
    if len(args) != arity:
        raise InvalidParameter(f"family {kind} takes {arity} parameter(s), got {len(args)}")
    spec = cls(*args)
    spec.validate()
    return spec


def family_from_graph(g: Graph) -> Custom:
    return Custom(graph6_encode(g))
