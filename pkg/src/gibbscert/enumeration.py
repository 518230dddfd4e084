"""Exhaustive enumeration of simple paths and animals, with resource caps.

Both enumerators are deterministic: paths come out in lexicographic order
of their vertex sequences, animals by (size, sorted vertex tuple).  When a
cap is hit the partial result is flagged, never silently truncated --
consumers must treat partial sums as lower bounds.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Iterable

from .graphs import Animal, Graph, GraphError, SimplePath, animal_from_vertices


@dataclass(frozen=True)
class Caps:
    """Hard limits on an enumeration run."""

    max_items: int = 10_000_000
    time_limit: float | None = None  # seconds of wall clock


DEFAULT_CAPS = Caps()


@dataclass
class Enumeration:
    """Result of an enumeration, possibly partial."""

    items: list
    complete: bool
    reason: str | None = None

    def __iter__(self):
        return iter(self.items)

    def __len__(self) -> int:
        return len(self.items)


class _CapTracker:
    def __init__(self, caps: Caps):
        self.caps = caps
        self.count = 0
        self.t0 = time.monotonic()
        self.reason: str | None = None

    def tick(self) -> bool:
        """Account for one emitted item; False once a cap is exceeded."""
        self.count += 1
        if self.count > self.caps.max_items:
            self.reason = f"item cap {self.caps.max_items} exceeded"
            return False
        if (
            self.caps.time_limit is not None
            and self.count % 256 == 0
            and time.monotonic() - self.t0 > self.caps.time_limit
        ):
            self.reason = f"time limit {self.caps.time_limit}s exceeded"
            return False
        return True


def enumerate_simple_paths(
    g: Graph,
    domain: Iterable[int],
    origin: int,
    targets: Iterable[int],
    max_len: int,
    caps: Caps = DEFAULT_CAPS,
) -> Enumeration:
    """All self-avoiding paths from origin to any target inside `domain`.

    Paths are emitted in lexicographic order of their vertex sequences.
    Length-0 paths and cycles are excluded: a path must take at least one
    step and never return to a visited vertex.
    """
    dom = set(domain)
    if origin not in dom:
        raise GraphError(f"origin {origin} not in domain")
    tgt = set(targets)
    if not tgt <= dom:
        raise GraphError("targets must lie inside the domain")
    tracker = _CapTracker(caps)
    out: list[SimplePath] = []
    path = [origin]
    on_path = {origin}
    aborted = False

    def dfs() -> bool:
        nonlocal aborted
        cur = path[-1]
        for v in g.neighbors(cur):
            if v not in dom or v in on_path:
                continue
            path.append(v)
            on_path.add(v)
            if v in tgt:
                if tracker.tick():
                    out.append(SimplePath(tuple(path)))
                else:
                    aborted = True
            if not aborted and len(path) - 1 < max_len:
                dfs()
            path.pop()
            on_path.discard(v)
            if aborted:
                return False
        return True

    if max_len >= 1:
        dfs()
    return Enumeration(items=out, complete=not aborted, reason=tracker.reason)


def count_paths_from(
    g: Graph,
    domain: Iterable[int],
    origin: int,
    max_len: int,
    caps: Caps = DEFAULT_CAPS,
) -> tuple[dict[int, int], bool]:
    """Counts of simple paths from origin, keyed by length.

    Counts every self-avoiding path of length 1..max_len originating at
    origin inside `domain`.  Returns (counts, complete).
    """
    dom = set(domain)
    enum = enumerate_simple_paths(g, dom, origin, dom, max_len, caps)
    counts: dict[int, int] = {}
    for p in enum.items:
        counts[p.length] = counts.get(p.length, 0) + 1
    return counts, enum.complete


def enumerate_animals(
    g: Graph,
    host: Iterable[int],
    min_vertices: int,
    max_vertices: int,
    caps: Caps = DEFAULT_CAPS,
) -> Enumeration:
    """All animals realized as connected vertex subsets with induced edges.

    Enumerates every connected vertex subset of `host` (in the induced
    subgraph of g) with size in [min_vertices, max_vertices], each emitted
    exactly once with the full induced edge set.  Breadth-first by size,
    lexicographic within a size.
    """
    if min_vertices < 1:
        raise GraphError("min_vertices must be >= 1")
    verts = sorted(set(host))
    missing = set(verts) - set(g.vertices)
    if missing:
        raise GraphError(f"host contains unknown vertices: {sorted(missing)}")
    vset = set(verts)
    tracker = _CapTracker(caps)
    out: list[Animal] = []
    complete = True

    level: list[frozenset[int]] = [frozenset([v]) for v in verts]
    seen: set[frozenset[int]] = set(level)
    size = 1
    while level and size <= max_vertices:
        if size >= min_vertices:
            for s in level:
                if not tracker.tick():
                    complete = False
                    break
                out.append(animal_from_vertices(g, s))
            if not complete:
                break
        if size == max_vertices:
            break
        nxt: list[frozenset[int]] = []
        for s in level:
            for u in s:
                for v in g.neighbors(u):
                    if v in vset and v not in s:
                        grown = s | {v}
                        if grown not in seen:
                            seen.add(grown)
                            nxt.append(grown)
        nxt.sort(key=lambda s: tuple(sorted(s)))
        level = nxt
        size += 1
    return Enumeration(items=out, complete=complete, reason=tracker.reason)
