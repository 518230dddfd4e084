import math

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

import gibbscert as gc
from gibbscert import GraphError

from conftest import brute_force_connected_sets, brute_force_paths


# ---------------------------------------------------------------------------
# construction


def test_build_chain(p5):
    assert p5.vertices == (0, 1, 2, 3, 4)
    assert [p5.degree(v) for v in p5.vertices] == [1, 2, 2, 2, 1]
    assert p5.is_connected()


def test_build_collapses_duplicates():
    g = gc.build_graph([(0, 1), (1, 0)])
    assert g.edges == ((0, 1),)


def test_build_rejects_loop():
    with pytest.raises(GraphError, match="loop"):
        gc.build_graph([(0, 0)])


def test_adjacency_symmetric_sorted(grid33):
    for u in grid33.vertices:
        nbrs = grid33.neighbors(u)
        assert list(nbrs) == sorted(nbrs)
        for v in nbrs:
            assert u in grid33.neighbors(v)


# ---------------------------------------------------------------------------
# metric


def test_distance_chain_ends(p5):
    assert gc.distance(p5, 0, 4) == 4
    assert gc.distance(p5, 2, 2) == 0


def test_distance_grid_corners(grid33):
    assert gc.distance(grid33, 0, 8) == 4


def test_distance_unreachable():
    g = gc.build_graph([(0, 1), (2, 3)])
    with pytest.raises(GraphError, match="unreachable"):
        gc.distance(g, 0, 3)


def test_distance_matches_networkx(grid33, star_chain):
    for g in (grid33, star_chain):
        nxg = nx.Graph(g.edges)
        for x in g.vertices:
            oracle = nx.single_source_shortest_path_length(nxg, x)
            assert g.distances_from(x) == dict(oracle)


# ---------------------------------------------------------------------------
# balls and boundaries


def test_ball_r0(grid33):
    b = gc.ball(grid33, 4, 0)
    assert b.vertices == (4,) and b.edges == ()


def test_ball_star_whole():
    g = gc.generators.star(4)
    b = gc.ball(g, 0, 1)
    assert set(b.vertices) == set(g.vertices)
    assert set(b.edges) == set(g.edges)


def test_ball_grid_center(grid33):
    b = gc.ball(grid33, 4, 1)
    assert len(b) == 5 and len(b.edges) == 4


def test_boundaries_chain(p5):
    vol = gc.boundaries(p5, {1, 2, 3})
    assert vol.inner == {1, 3}
    assert vol.outer == {0, 4}
    assert vol.interior == {2}
    assert not vol.closed


def test_boundaries_closed(p5):
    vol = gc.boundaries(p5, set(p5.vertices))
    assert vol.closed and not vol.inner and not vol.outer


def test_boundaries_edge_cover(grid33):
    vol = gc.boundaries(grid33, {0, 1, 3, 4})
    for x in vol.delta:
        for y in grid33.neighbors(x):
            assert y in vol.delta or y in vol.outer


# ---------------------------------------------------------------------------
# path enumeration


def test_paths_p3():
    g = gc.generators.chain(3)
    e = gc.enumerate_simple_paths(g, g.vertices, 0, {2}, 10)
    assert e.complete
    assert [p.vertices for p in e.items] == [(0, 1, 2)]


def test_paths_triangle():
    g = gc.build_graph([(0, 1), (1, 2), (0, 2)])
    e = gc.enumerate_simple_paths(g, g.vertices, 2, {0}, 10)
    assert {p.vertices for p in e.items} == {(2, 0), (2, 1, 0)}


def test_paths_cycles_excluded(c6):
    e = gc.enumerate_simple_paths(c6, c6.vertices, 0, {0}, 10)
    assert e.items == []


def test_paths_lexicographic(grid33):
    e = gc.enumerate_simple_paths(grid33, grid33.vertices, 0, set(grid33.vertices), 4)
    seqs = [p.vertices for p in e.items]
    assert seqs == sorted(seqs)


def test_paths_cap_flags_partial(grid33):
    caps = gc.Caps(max_items=5)
    e = gc.enumerate_simple_paths(grid33, grid33.vertices, 0, {8}, 8, caps)
    assert not e.complete and len(e.items) == 5 and e.reason


def test_paths_against_brute_force(grid33, star_chain, c6):
    for g, origin, targets in [
        (grid33, 4, {0, 8}),
        (star_chain, 3, {0, 6}),
        (c6, 0, {3}),
    ]:
        e = gc.enumerate_simple_paths(g, g.vertices, origin, targets, len(g) - 1)
        assert e.complete
        got = {p.vertices for p in e.items}
        assert got == brute_force_paths(g, g.vertices, origin, targets, len(g) - 1)


def test_path_graph_is_animal(grid33):
    e = gc.enumerate_simple_paths(grid33, grid33.vertices, 0, set(grid33.vertices), 5)
    for p in e.items:
        counts = p.leave_counts()
        assert all(c <= 1 for c in counts.values())
        gc.path_animal(p).validate(grid33)


# ---------------------------------------------------------------------------
# animal enumeration


def test_animals_p3_pairs():
    g = gc.generators.chain(3)
    e = gc.enumerate_animals(g, g.vertices, 2, 2)
    assert {a.vertices for a in e.items} == {frozenset({0, 1}), frozenset({1, 2})}


def test_animals_singletons(p5):
    e = gc.enumerate_animals(p5, p5.vertices, 1, 1)
    assert {a.vertices for a in e.items} == {frozenset({v}) for v in p5.vertices}


def test_animals_triangle():
    g = gc.build_graph([(0, 1), (1, 2), (0, 2)])
    e = gc.enumerate_animals(g, g.vertices, 3, 3)
    assert len(e.items) == 1
    assert e.items[0].edge_set == {(0, 1), (0, 2), (1, 2)}


def test_animals_against_subset_oracle(grid33, star_chain):
    for g in (grid33, star_chain):
        e = gc.enumerate_animals(g, g.vertices, 1, 5)
        assert e.complete
        got = {a.vertices for a in e.items}
        assert got == brute_force_connected_sets(g, g.vertices, 1, 5)


def test_animals_cap_flags_partial(grid33):
    e = gc.enumerate_animals(grid33, grid33.vertices, 1, 9, gc.Caps(max_items=10))
    assert not e.complete and len(e.items) == 10


# ---------------------------------------------------------------------------
# property tests on random connected graphs


@st.composite
def connected_graphs(draw):
    n = draw(st.integers(min_value=2, max_value=8))
    # random spanning tree first, then optional extra edges
    edges = set()
    for v in range(1, n):
        parent = draw(st.integers(min_value=0, max_value=v - 1))
        edges.add((parent, v))
    extra = draw(
        st.lists(
            st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)),
            max_size=6,
        )
    )
    for u, v in extra:
        if u != v:
            edges.add((min(u, v), max(u, v)))
    return gc.build_graph(sorted(edges))


@settings(max_examples=60, deadline=None)
@given(connected_graphs(), st.data())
def test_metric_axioms(g, data):
    verts = list(g.vertices)
    x = data.draw(st.sampled_from(verts))
    y = data.draw(st.sampled_from(verts))
    z = data.draw(st.sampled_from(verts))
    dxy = gc.distance(g, x, y)
    assert dxy == gc.distance(g, y, x)
    assert (dxy == 0) == (x == y)
    assert gc.distance(g, x, z) <= dxy + gc.distance(g, y, z)


@settings(max_examples=40, deadline=None)
@given(connected_graphs(), st.data())
def test_ball_monotone(g, data):
    x = data.draw(st.sampled_from(list(g.vertices)))
    prev = frozenset()
    for r in range(len(g)):
        cur = gc.ball_vertices(g, x, r)
        assert prev <= cur
        prev = cur


@settings(max_examples=30, deadline=None)
@given(connected_graphs(), st.data())
def test_path_count_matches_oracle(g, data):
    origin = data.draw(st.sampled_from(list(g.vertices)))
    targets = set(g.vertices)
    e = gc.enumerate_simple_paths(g, g.vertices, origin, targets, len(g) - 1)
    oracle = brute_force_paths(g, g.vertices, origin, targets, len(g) - 1)
    assert {p.vertices for p in e.items} == oracle
    for p in e.items:
        p.validate(g)
