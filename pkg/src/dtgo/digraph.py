"""Directed communication graphs: construction, random generation, connectivity.

Nodes are dense integer indices 0..node_count-1. Every node carries a
self-loop; gossip weighting and the round simulator rely on it.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

DEFAULT_MAX_ATTEMPTS = 10000


class SamplingExhaustedError(RuntimeError):
    """Rejection sampling did not find a strongly connected graph in time."""


@dataclass(frozen=True)
class Digraph:
    """Immutable directed graph with mandatory self-loops on every node."""

    node_count: int
    edges: frozenset[tuple[int, int]]

    def __post_init__(self) -> None:
        if self.node_count < 1:
            raise ValueError("node_count must be >= 1")
        object.__setattr__(self, "edges", frozenset(self.edges))
        for a, b in self.edges:
            if not (0 <= a < self.node_count and 0 <= b < self.node_count):
                raise ValueError(f"edge ({a}, {b}) out of range for {self.node_count} nodes")
        missing = [n for n in range(self.node_count) if (n, n) not in self.edges]
        if missing:
            raise ValueError(f"nodes missing self-loops: {missing}")

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def has_edge(self, frm: int, to: int) -> bool:
        return (frm, to) in self.edges

    def in_neighbors(self, n: int) -> set[int]:
        """All senders m with an edge m -> n, including n itself."""
        self._check_node(n)
        return {m for (m, to) in self.edges if to == n}

    def out_neighbors(self, n: int) -> set[int]:
        self._check_node(n)
        return {to for (m, to) in self.edges if m == n}

    def in_degree(self, n: int) -> int:
        return len(self.in_neighbors(n))

    def out_adjacency(self) -> list[list[int]]:
        """Successor lists, sorted for deterministic iteration."""
        adj: list[list[int]] = [[] for _ in range(self.node_count)]
        for a, b in sorted(self.edges):
            adj[a].append(b)
        return adj

    def in_adjacency(self) -> list[list[int]]:
        """Predecessor lists, sorted for deterministic iteration."""
        adj: list[list[int]] = [[] for _ in range(self.node_count)]
        for a, b in sorted(self.edges):
            adj[b].append(a)
        return adj

    def _check_node(self, n: int) -> None:
        if not 0 <= n < self.node_count:
            raise ValueError(f"node {n} out of range")


def complete_graph(n: int) -> Digraph:
    """All-to-all digraph on n nodes, self-loops included (n^2 edges)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return Digraph(n, frozenset((a, b) for a in range(n) for b in range(n)))


def random_digraph(n: int, p: float, rng: np.random.Generator | int | None) -> Digraph:
    """Each ordered pair (i, j), i != j, is an edge with probability p.

    Self-loops are always present regardless of p.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must be in [0, 1]")
    rng = np.random.default_rng(rng)
    mask = rng.random((n, n)) < p
    np.fill_diagonal(mask, True)
    rows, cols = np.nonzero(mask)
    return Digraph(n, frozenset(zip(rows.tolist(), cols.tolist())))


def strongly_connected(out_adj: Sequence[Iterable[int]]) -> bool:
    """Whether the adjacency structure forms a single strongly connected component.

    Standard linear-time check: every node reachable from node 0 along
    forward edges and along reversed edges.
    """
    n = len(out_adj)
    in_adj: list[list[int]] = [[] for _ in range(n)]
    for a in range(n):
        for b in out_adj[a]:
            in_adj[b].append(a)
    for adj in (out_adj, in_adj):
        seen = [False] * n
        seen[0] = True
        queue = deque([0])
        count = 1
        while queue:
            u = queue.popleft()
            for v in adj[u]:
                if not seen[v]:
                    seen[v] = True
                    count += 1
                    queue.append(v)
        if count != n:
            return False
    return True


def is_strongly_connected(g: Digraph) -> bool:
    """True iff every node reaches every other node along directed edges."""
    return strongly_connected(g.out_adjacency())


def sample_strongly_connected(
    n: int,
    p: float,
    rng: np.random.Generator | int | None,
    max_attempts: int = DEFAULT_MAX_ATTEMPTS,
) -> Digraph:
    """Rejection-sample random digraphs until one is strongly connected."""
    if max_attempts < 1:
        raise ValueError("max_attempts must be >= 1")
    rng = np.random.default_rng(rng)
    for _ in range(max_attempts):
        g = random_digraph(n, p, rng)
        if is_strongly_connected(g):
            return g
    raise SamplingExhaustedError(
        f"no strongly connected digraph with n={n}, p={p} in {max_attempts} attempts"
    )


def to_edge_list_text(g: Digraph) -> str:
    """Serialize as edge-list text: a node-count header, then one 'from to' per line."""
    lines = [str(g.node_count)]
    lines.extend(f"{a} {b}" for a, b in sorted(g.edges))
    return "\n".join(lines) + "\n"


def parse_edge_list(text: str) -> Digraph:
    """Parse the edge-list format emitted by :func:`to_edge_list_text`.

    Blank lines and lines starting with '#' are ignored. Self-loops must be
    listed explicitly; a graph without them is rejected.
    """
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise ValueError("empty graph file")
    try:
        n = int(lines[0])
    except ValueError as exc:
        raise ValueError(f"bad node-count header: {lines[0]!r}") from exc
    edges = set()
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise ValueError(f"bad edge line: {ln!r}")
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError as exc:
            raise ValueError(f"bad edge line: {ln!r}") from exc
        edges.add((a, b))
    return Digraph(n, frozenset(edges))
