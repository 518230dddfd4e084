import itertools

import pytest

import gibbscert as gc


@pytest.fixture
def p5():
    return gc.generators.chain(5)


@pytest.fixture
def c6():
    return gc.generators.cycle(6)


@pytest.fixture
def grid33():
    return gc.generators.grid(3, 3)


@pytest.fixture
def star_chain():
    # chain 0..6 with 3 extra leaves on the center: K_{1,5} embedded in a chain
    return gc.generators.star_in_chain(7, 3)


def brute_force_paths(g, domain, origin, targets, max_len):
    """Oracle: all injective vertex sequences checked for adjacency."""
    dom = sorted(set(domain))
    others = [v for v in dom if v != origin]
    found = set()
    for k in range(1, min(max_len, len(others)) + 1):
        for perm in itertools.permutations(others, k):
            seq = (origin,) + perm
            if seq[-1] not in targets:
                continue
            if all(g.has_edge(a, b) for a, b in zip(seq, seq[1:])):
                found.add(seq)
    return found


def brute_force_connected_sets(g, host, min_size, max_size):
    """Oracle: every vertex subset, connectivity checked by traversal."""
    verts = sorted(set(host))
    out = set()
    for k in range(min_size, max_size + 1):
        for combo in itertools.combinations(verts, k):
            cset = set(combo)
            start = combo[0]
            seen = {start}
            stack = [start]
            while stack:
                u = stack.pop()
                for v in g.neighbors(u):
                    if v in cset and v not in seen:
                        seen.add(v)
                        stack.append(v)
            if seen == cset:
                out.add(frozenset(combo))
    return out
