"""Simple undirected network topologies and geodesic counting."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

import numpy as np

from .errors import (
    DuplicateEdgeError,
    InvalidEdgeError,
    InvalidPairError,
    InvalidParameterError,
    InvalidSizeError,
    NoPathError,
    VertexIndexError,
)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    Edges are stored as normalized ``(min, max)`` pairs. Instances are
    immutable; use the constructors below rather than building one by hand.
    """

    n: int
    edges: frozenset[tuple[int, int]]
    label: str = field(default="custom", compare=False)

    def __post_init__(self):
        if self.n < 1:
            raise InvalidSizeError(f"graph needs at least one vertex, got n={self.n}")
        for i, j in self.edges:
            if i == j:
                raise InvalidEdgeError(f"self-loop at vertex {i}")
            if i > j:
                raise InvalidEdgeError(f"edge ({i}, {j}) is not normalized")
            _check_vertex(self.n, i)
            _check_vertex(self.n, j)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def has_edge(self, i: int, j: int) -> bool:
        return (min(i, j), max(i, j)) in self.edges

    def adjacency(self) -> np.ndarray:
        a = np.zeros((self.n, self.n))
        for i, j in self.edges:
            a[i, j] = a[j, i] = 1.0
        return a

    def neighbors(self) -> list[list[int]]:
        nbrs: list[list[int]] = [[] for _ in range(self.n)]
        for i, j in sorted(self.edges):
            nbrs[i].append(j)
            nbrs[j].append(i)
        return nbrs

    def degree(self, v: int) -> int:
        _check_vertex(self.n, v)
        return sum(1 for e in self.edges if v in e)

    def degrees(self) -> list[int]:
        deg = [0] * self.n
        for i, j in self.edges:
            deg[i] += 1
            deg[j] += 1
        return deg

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)


@dataclass(frozen=True)
class GeodesicCount:
    distance: int
    count: int


def _check_vertex(n: int, v: int) -> None:
    if not 0 <= v < n:
        raise VertexIndexError(f"vertex {v} out of range [0, {n})")


def _check_size(n: int, minimum: int = 1) -> None:
    if n < minimum:
        raise InvalidSizeError(f"n must be >= {minimum}, got {n}")


def complete(n: int) -> Graph:
    _check_size(n)
    edges = frozenset((i, j) for i in range(n) for j in range(i + 1, n))
    return Graph(n, edges, label=f"K{n}")


def complete_minus_edge(n: int, i: int, j: int) -> Graph:
    """Complete graph with the single edge ``{i, j}`` removed."""
    _check_size(n, 3)
    if i == j:
        raise InvalidPairError(f"removed edge needs two distinct vertices, got {i}")
    _check_vertex(n, i)
    _check_vertex(n, j)
    missing = (min(i, j), max(i, j))
    edges = complete(n).edges - {missing}
    return Graph(n, edges, label=f"K{n}-({i},{j})")


def path(n: int) -> Graph:
    _check_size(n)
    return Graph(n, frozenset((k, k + 1) for k in range(n - 1)), label=f"P{n}")


def theta(l: int, n: int) -> Graph:
    """Two antipodal vertices joined by ``l`` disjoint paths of ``n`` vertices each.

    Every path carries ``n - 2`` internal vertices, so the graph has
    ``2 + (n - 2) * l`` vertices and ``theta(1, n)`` is the chain ``path(n)``.
    The antipodal vertices are ``0`` and the last vertex; internal vertices of
    path ``p`` are numbered consecutively from ``1 + p * (n - 2)``.
    """
    if l < 1 or n < 3:
        raise InvalidParameterError(f"theta needs l >= 1 and n >= 3, got l={l}, n={n}")
    inner = n - 2
    total = 2 + inner * l
    last = total - 1
    edges = set()
    for p in range(l):
        chain = [0] + [1 + p * inner + q for q in range(inner)] + [last]
        for a, b in zip(chain, chain[1:]):
            edges.add((min(a, b), max(a, b)))
    return Graph(total, frozenset(edges), label=f"theta({l},{n})")


def antipodes(l: int, n: int) -> tuple[int, int]:
    """Antipodal vertex pair of ``theta(l, n)``."""
    return 0, 1 + (n - 2) * l


def from_edge_list(n: int, edges: Iterable[Iterable[int]]) -> Graph:
    _check_size(n)
    seen: set[tuple[int, int]] = set()
    for pair in edges:
        a, b = (int(v) for v in pair)
        if a == b:
            raise InvalidEdgeError(f"self-loop at vertex {a}")
        _check_vertex(n, a)
        _check_vertex(n, b)
        key = (min(a, b), max(a, b))
        if key in seen:
            raise DuplicateEdgeError(f"duplicate edge {key}")
        seen.add(key)
    return Graph(n, frozenset(seen))


def parse_edge_list(text: str) -> Graph:
    """Parse the edge-list text format.

    The first non-comment line holds the vertex count; each following line
    holds one edge as two whitespace-separated integers. ``#`` starts a
    comment that runs to the end of the line.
    """
    rows = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append(line.split())
    if not rows:
        raise InvalidSizeError("edge list is empty")
    if len(rows[0]) != 1:
        raise InvalidSizeError(f"first line must hold the vertex count, got {rows[0]!r}")
    n = int(rows[0][0])
    pairs = []
    for parts in rows[1:]:
        if len(parts) != 2:
            raise InvalidEdgeError(f"edge line must hold two vertices, got {parts!r}")
        pairs.append((int(parts[0]), int(parts[1])))
    return from_edge_list(n, pairs)


def read_edge_list(path_like) -> Graph:
    p = Path(path_like)
    g = parse_edge_list(p.read_text())
    return Graph(g.n, g.edges, label=f"file:{p.name}")


def format_edge_list(g: Graph) -> str:
    lines = [str(g.n)] + [f"{i} {j}" for i, j in g.sorted_edges()]
    return "\n".join(lines) + "\n"


def count_geodesics(g: Graph, i: int, j: int) -> GeodesicCount:
    """Shortest-path distance from ``i`` to ``j`` and the number of such paths."""
    _check_vertex(g.n, i)
    _check_vertex(g.n, j)
    nbrs = g.neighbors()
    dist = [-1] * g.n
    sigma = [0] * g.n
    dist[i] = 0
    sigma[i] = 1
    queue = deque([i])
    while queue:
        v = queue.popleft()
        if dist[j] != -1 and dist[v] >= dist[j]:
            break
        for w in nbrs[v]:
            if dist[w] == -1:
                dist[w] = dist[v] + 1
                queue.append(w)
            if dist[w] == dist[v] + 1:
                sigma[w] += sigma[v]
    if dist[j] == -1:
        raise NoPathError(f"vertices {i} and {j} are disconnected")
    return GeodesicCount(distance=dist[j], count=sigma[j])
