"""Deterministic graph generators and edge-list serialization."""
from __future__ import annotations

import hashlib
import json
import os
import tempfile
from typing import Callable, Iterable, Sequence

from .graphs import Graph, GraphError, build_graph


def chain(n: int) -> Graph:
    """Path graph on vertices 0..n-1."""
    if n < 2:
        raise GraphError("chain needs at least 2 vertices")
    return build_graph([(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError("cycle needs at least 3 vertices")
    return build_graph([(i, (i + 1) % n) for i in range(n)])


def grid(a: int, b: int) -> Graph:
    """a x b grid; vertex (i, j) gets id i * b + j."""
    if a < 1 or b < 1 or a * b < 2:
        raise GraphError("grid needs at least 2 vertices")
    edges = []
    for i in range(a):
        for j in range(b):
            if j + 1 < b:
                edges.append((i * b + j, i * b + j + 1))
            if i + 1 < a:
                edges.append((i * b + j, (i + 1) * b + j))
    return build_graph(edges)


def star(k: int) -> Graph:
    """Star with center 0 and k leaves 1..k."""
    if k < 1:
        raise GraphError("star needs at least 1 leaf")
    return build_graph([(0, i) for i in range(1, k + 1)])


def star_in_chain(chain_len: int, extra_leaves: int) -> Graph:
    """A chain with extra leaves attached to its center vertex.

    The center's degree is 2 + extra_leaves, so the star sits embedded in
    a chain; leaf ids follow the chain ids.
    """
    if chain_len < 3 or chain_len % 2 == 0:
        raise GraphError("chain_len must be odd and >= 3")
    edges = [(i, i + 1) for i in range(chain_len - 1)]
    center = chain_len // 2
    for t in range(extra_leaves):
        edges.append((center, chain_len + t))
    return build_graph(edges)


def growing_tree(depth: int) -> Graph:
    """Rooted tree where the root has 2 children and every vertex at depth
    k >= 1 has k + 2 further children, down to the given depth.

    Every hub has an even bigger hub at distance one, which defeats
    temperedness for any unbounded growth function.
    """
    if depth < 1:
        raise GraphError("depth must be >= 1")
    edges = []
    next_id = 1
    frontier = [0]
    for level in range(depth):
        n_children = level + 2
        new_frontier = []
        for parent in frontier:
            for _ in range(n_children):
                edges.append((parent, next_id))
                new_frontier.append(next_id)
                next_id += 1
        frontier = new_frontier
    return build_graph(edges)


def repulsive_tree(
    hub_degrees: Sequence[int],
    phi: Callable[[float], float],
    n_star: int,
) -> Graph:
    """A spine with hubs placed greedily so the repulsion condition holds.

    Hub i is a spine vertex with hub_degrees[i] - 2 pendant leaves
    (degree = hub_degrees[i]); consecutive positions are chosen left to
    right so every hub pair at or above the degree threshold n_star is at
    spine distance >= phi(min degree of the pair).
    """
    if n_star < 3:
        raise GraphError("n_star must be >= 3 (spine vertices have degree 2)")
    positions: list[int] = []
    for i, d in enumerate(hub_degrees):
        if d < 3:
            raise GraphError(f"hub {i}: degree {d} < 3 cannot anchor leaves on a spine")
        if not positions:
            positions.append(0)
            continue
        pos = positions[-1] + 1
        for j, pj in enumerate(positions):
            if min(d, hub_degrees[j]) >= n_star:
                need = pj + int(-(-phi(min(d, hub_degrees[j])) // 1))  # ceil
                pos = max(pos, need)
        positions.append(pos)
    spine_len = positions[-1] + 1 if positions else 1
    # interior hubs need 2 spine neighbors; extend the spine by one on each end
    edges = [(i, i + 1) for i in range(spine_len + 1)]
    offset = 1  # spine shifted so hub positions are interior
    next_id = spine_len + 2
    for i, d in enumerate(hub_degrees):
        anchor = positions[i] + offset
        for _ in range(d - 2):
            edges.append((anchor, next_id))
            next_id += 1
    return build_graph(edges)


# ---------------------------------------------------------------------------
# serialization


def edges_to_text(g: Graph) -> str:
    return "".join(f"{u} {v}\n" for u, v in g.edges)


def edges_to_json(g: Graph) -> str:
    return json.dumps({"edges": [[u, v] for u, v in g.edges]})


def parse_edge_text(text: str) -> Graph:
    """One `u v` pair per line; `#` starts a comment."""
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphError(f"line {lineno}: expected 'u v', got {raw!r}")
        edges.append((int(parts[0]), int(parts[1])))
    return build_graph(edges)


def parse_edge_json(text: str) -> Graph:
    data = json.loads(text)
    return build_graph([(int(u), int(v)) for u, v in data["edges"]])


def load_graph(path: str) -> Graph:
    with open(path) as fh:
        text = fh.read()
    if path.endswith(".json"):
        return parse_edge_json(text)
    return parse_edge_text(text)


def graph_hash(g: Graph) -> str:
    return hashlib.sha256(edges_to_text(g).encode()).hexdigest()[:16]


def atomic_write(path: str, content: str) -> None:
    """Write-then-rename so partial files never appear at the target path."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(content)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
