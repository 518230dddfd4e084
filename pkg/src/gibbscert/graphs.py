"""Finite simple graphs, the shortest-path metric, balls, and vertex boundaries.

Vertices are integers.  Graphs are immutable after construction; all
derived objects (paths, animals, volumes) keep plain tuples/frozensets so
they can be hashed, compared, and serialized without surprises.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator


class GraphError(ValueError):
    """Raised for invalid graph construction or invalid graph queries."""


class Graph:
    """Undirected simple graph with sorted adjacency lists.

    No loops, no multi-edges.  Adjacency is symmetric by construction.
    """

    __slots__ = ("_adj", "_vertices", "_edges")

    def __init__(self, adjacency: dict[int, tuple[int, ...]]):
        self._adj = adjacency
        self._vertices = tuple(sorted(adjacency))
        edges = []
        for u in self._vertices:
            for v in adjacency[u]:
                if u < v:
                    edges.append((u, v))
        self._edges = tuple(edges)

    @property
    def vertices(self) -> tuple[int, ...]:
        return self._vertices

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        """Edges as (u, v) pairs with u < v, sorted."""
        return self._edges

    def __contains__(self, x: int) -> bool:
        return x in self._adj

    def __len__(self) -> int:
        return len(self._adj)

    def neighbors(self, x: int) -> tuple[int, ...]:
        return self._adj[x]

    def degree(self, x: int) -> int:
        return len(self._adj[x])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj.get(u, ())

    def max_degree(self) -> int:
        return max((len(n) for n in self._adj.values()), default=0)

    def is_connected(self) -> bool:
        if not self._vertices:
            return True
        seen = self._bfs_levels(self._vertices[0])
        return len(seen) == len(self._vertices)

    def _bfs_levels(self, x: int, r_max: int | None = None) -> dict[int, int]:
        """Distances from x, optionally truncated at radius r_max."""
        if x not in self._adj:
            raise GraphError(f"vertex {x} not in graph")
        dist = {x: 0}
        queue = deque([x])
        while queue:
            u = queue.popleft()
            du = dist[u]
            if r_max is not None and du >= r_max:
                continue
            for v in self._adj[u]:
                if v not in dist:
                    dist[v] = du + 1
                    queue.append(v)
        return dist

    def distances_from(self, x: int) -> dict[int, int]:
        return self._bfs_levels(x)

    def induced_subgraph(self, vertices: Iterable[int]) -> "Graph":
        vs = set(vertices)
        missing = vs - set(self._adj)
        if missing:
            raise GraphError(f"vertices not in graph: {sorted(missing)}")
        adj = {u: tuple(v for v in self._adj[u] if v in vs) for u in sorted(vs)}
        return Graph(adj)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self._adj == other._adj

    def __hash__(self) -> int:
        return hash(self._edges)

    def __repr__(self) -> str:
        return f"Graph(|V|={len(self._vertices)}, |E|={len(self._edges)})"


def build_graph(edges: Iterable[tuple[int, int]]) -> Graph:
    """Canonical graph from an edge list.

    Duplicate edges (in either orientation) collapse; loop edges are
    rejected.  The vertex set is the union of all endpoints.
    """
    adj: dict[int, set[int]] = {}
    for u, v in edges:
        if u == v:
            raise GraphError(f"loop edge ({u}, {v}) not allowed")
        adj.setdefault(u, set()).add(v)
        adj.setdefault(v, set()).add(u)
    if not adj:
        raise GraphError("empty edge list")
    return Graph({u: tuple(sorted(nbrs)) for u, nbrs in adj.items()})


def distance(g: Graph, x: int, y: int) -> int:
    """Length of the shortest path between x and y (BFS)."""
    if y not in g:
        raise GraphError(f"vertex {y} not in graph")
    dist = g.distances_from(x)
    if y not in dist:
        raise GraphError(f"vertices {x} and {y} are unreachable from each other")
    return dist[y]


def ball_vertices(g: Graph, x: int, r: int) -> frozenset[int]:
    """All vertices within distance r of x."""
    if r < 0:
        raise GraphError("radius must be nonnegative")
    return frozenset(g._bfs_levels(x, r_max=r))


def ball(g: Graph, x: int, r: int) -> Graph:
    """Induced subgraph on the vertices within distance r of x."""
    return g.induced_subgraph(ball_vertices(g, x, r))


@dataclass(frozen=True)
class Volume:
    """A finite vertex set with its inner and outer vertex boundaries."""

    delta: frozenset[int]
    inner: frozenset[int]   # vertices of delta with a neighbor outside
    outer: frozenset[int]   # vertices outside delta with a neighbor inside
    closed: bool            # True when both boundaries are empty

    @property
    def interior(self) -> frozenset[int]:
        return self.delta - self.inner


def boundaries(g: Graph, delta: Iterable[int]) -> Volume:
    """Compute the inner/outer vertex boundaries of a finite vertex set."""
    dset = frozenset(delta)
    if not dset:
        raise GraphError("delta must be nonempty")
    missing = dset - set(g.vertices)
    if missing:
        raise GraphError(f"delta contains unknown vertices: {sorted(missing)}")
    inner = set()
    outer = set()
    for x in dset:
        for y in g.neighbors(x):
            if y not in dset:
                inner.add(x)
                outer.add(y)
    return Volume(
        delta=dset,
        inner=frozenset(inner),
        outer=frozenset(outer),
        closed=not inner and not outer,
    )


@dataclass(frozen=True)
class SimplePath:
    """A self-avoiding path given by its vertex sequence."""

    vertices: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.vertices) - 1

    @property
    def origin(self) -> int:
        return self.vertices[0]

    @property
    def terminus(self) -> int:
        return self.vertices[-1]

    @property
    def edge_set(self) -> frozenset[tuple[int, int]]:
        vs = self.vertices
        return frozenset(
            (min(u, v), max(u, v)) for u, v in zip(vs, vs[1:])
        )

    def leave_counts(self) -> dict[int, int]:
        """Number of times the path leaves each vertex (1 for all but the terminus)."""
        return {v: 1 for v in self.vertices[:-1]}

    def validate(self, g: Graph) -> None:
        vs = self.vertices
        if len(set(vs)) != len(vs):
            raise GraphError(f"path revisits a vertex: {vs}")
        for u, v in zip(vs, vs[1:]):
            if not g.has_edge(u, v):
                raise GraphError(f"non-adjacent step ({u}, {v}) in path")


@dataclass(frozen=True)
class Animal:
    """A finite connected subgraph of a host graph."""

    vertices: frozenset[int]
    edge_set: frozenset[tuple[int, int]]

    def validate(self, host: Graph) -> None:
        for u, v in self.edge_set:
            if u not in self.vertices or v not in self.vertices:
                raise GraphError(f"edge ({u}, {v}) leaves the animal's vertex set")
            if not host.has_edge(u, v):
                raise GraphError(f"edge ({u}, {v}) not in host graph")
        # connectivity over the animal's own edges
        if not self.vertices:
            raise GraphError("empty animal")
        adj: dict[int, list[int]] = {v: [] for v in self.vertices}
        for u, v in self.edge_set:
            adj[u].append(v)
            adj[v].append(u)
        start = next(iter(self.vertices))
        seen = {start}
        stack = [start]
        while stack:
            u = stack.pop()
            for v in adj[u]:
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        if seen != self.vertices:
            raise GraphError("animal is not connected")


def animal_from_vertices(g: Graph, vertices: Iterable[int]) -> Animal:
    """Animal on a connected vertex set with all induced host edges."""
    vs = frozenset(vertices)
    edges = frozenset(
        (u, v) for u in vs for v in g.neighbors(u) if u < v and v in vs
    )
    a = Animal(vertices=vs, edge_set=edges)
    a.validate(g)
    return a


def path_animal(p: SimplePath) -> Animal:
    """The graph of a path, as an animal."""
    return Animal(vertices=frozenset(p.vertices), edge_set=p.edge_set)
