import functools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import QUERY, random_query, random_quadtree
from graphtrav.counters import OpCounter
from graphtrav.errors import ParseError, PointOutOfWorld
from graphtrav.spatial import (
    POI,
    QUAD,
    SUB,
    Rect,
    brute_force_region,
    check_quadgraph,
    find_root,
    naive_iterations,
    quadtree_build,
    read_points,
    rect_overlaps,
    rect_within,
    region_query,
    region_query_naive,
    region_query_optimized,
)
from graphtrav.traversal import Multiset


def names(ms):
    return {v.properties["name"] for v in ms.support()}


# ---------------------------------------------------------------- rects


def test_rect_validation():
    with pytest.raises(ValueError):
        Rect(1, 0, 0, 0)
    with pytest.raises(ValueError):
        Rect(0, 1, 0, 0)


def test_overlaps_root():
    assert rect_overlaps(Rect(0, 0, 100, 100), QUERY)


def test_within_reflexive():
    a = Rect(1, 2, 3, 4)
    assert rect_within(a, a)
    assert rect_overlaps(a, a)


def test_shared_corner_overlaps():
    assert rect_overlaps(Rect(0, 0, 10, 10), Rect(10, 10, 20, 20))
    assert not rect_overlaps(Rect(0, 0, 10, 10), Rect(10.5, 10, 20, 20))


def test_within_strict_cases():
    q = Rect(0, 0, 10, 10)
    assert rect_within(Rect(0, 0, 10, 5), q)
    assert not rect_within(Rect(-1, 0, 5, 5), q)
    assert not rect_within(Rect(0, 0, 10, 11), q)


@given(*(st.integers(-5, 5) for _ in range(8)))
def test_rect_predicates_match_intervals(a, b, c, d, e, f, g, h):
    r = Rect(min(a, b), min(c, d), max(a, b), max(c, d))
    q = Rect(min(e, f), min(g, h), max(e, f), max(g, h))
    xs = set(range(r.bl_x, r.tr_x + 1)) & set(range(q.bl_x, q.tr_x + 1))
    ys = set(range(r.bl_y, r.tr_y + 1)) & set(range(q.bl_y, q.tr_y + 1))
    assert rect_overlaps(r, q) == bool(xs and ys)
    if rect_within(r, q):
        assert rect_overlaps(r, q)


def test_quadrants():
    sw, se, nw, ne = Rect(0, 0, 8, 4).quadrants()
    assert sw == Rect(0, 0, 4, 2) and ne == Rect(4, 2, 8, 4)
    assert se == Rect(4, 0, 8, 2) and nw == Rect(0, 2, 4, 4)


# ---------------------------------------------------------------- fixture queries


def test_fixture_structure(quad):
    root = find_root(quad)
    assert root.id == 1
    assert (root.properties["bl_x"], root.properties["tr_x"]) == (0, 100)
    check_quadgraph(quad, root)


def test_naive_iterations(quad, quad_names):
    outs = list(naive_iterations(quad.vertex(1), QUERY))
    assert [set(o.ids()) for o in outs[:2]] == [{2, 3, 4}, {6, 9, 8}]
    assert names(outs[2]) == {"c", "d", "h"}
    assert len(outs) == 3
    reached = set().union(*(o.support() for o in outs))
    for excluded in (quad.vertex(5), quad.vertex(7), quad_names["i"]):
        assert excluded not in reached


def test_naive_result(quad):
    assert names(region_query_naive(quad, quad.vertex(1), QUERY)) == {"c", "d", "h"}


def test_world_query_returns_all(quad):
    world = Rect(0, 0, 100, 100)
    pois = {v for v in quad.iter_vertices() if v.properties["type"] == POI}
    for mode in ("naive", "optimized"):
        assert region_query(quad, quad.vertex(1), world, mode).support() == pois


def test_optimized_fixture(quad, quad_names):
    c_naive, c_opt = OpCounter(), OpCounter()
    naive = region_query_naive(quad, quad.vertex(1), QUERY, c_naive)
    opt = region_query_optimized(quad, quad.vertex(1), QUERY, c_opt)
    assert opt == naive
    assert names(opt) == {"c", "d", "h"}
    assert c_opt.bounding_box_comparisons_on(quad_names["d"]) == 0
    assert c_naive.bounding_box_comparisons_on(quad_names["d"]) == 4
    # frozen counts, worked out by hand over the fixture
    assert c_naive.bounding_box_comparisons() == 44
    assert c_opt.bounding_box_comparisons() == 36


def test_world_query_no_comparisons_below_root(quad):
    c = OpCounter()
    region_query_optimized(quad, quad.vertex(1), Rect(-1, -1, 101, 101), c)
    assert c.bounding_box_comparisons() == 4
    compared = {v.id for v in quad.iter_vertices() if c.bounding_box_comparisons_on(v)}
    assert compared == {1}


def test_unknown_mode(quad):
    with pytest.raises(ValueError):
        region_query(quad, quad.vertex(1), QUERY, "fast")


def test_poi_on_internal_quad(quad, quad_names):
    # hang an extra poi straight off quad 3
    quad.add_vertex(40, {"type": POI, "name": "z", **Rect.point(45, 44).props()})
    quad.add_edge(200, SUB, 3, 40)
    for mode in ("naive", "optimized"):
        assert names(region_query(quad, quad.vertex(1), QUERY, mode)) == {"c", "d", "h", "z"}


# ---------------------------------------------------------------- builder


def test_build_single_point():
    g, root = quadtree_build([(0, Rect.point(1, 1))], Rect(0, 0, 10, 10), 4)
    assert [e.head.id for e in root.out_edges] == [0]
    assert root.id == 1
    assert sum(1 for v in g.iter_vertices() if v.properties["type"] == QUAD) == 1


def test_build_five_in_one_quadrant():
    pts = [(i, Rect.point(1 + i, 1 + i)) for i in range(5)]
    g, root = quadtree_build(pts, Rect(0, 0, 100, 100), 4)
    children = [e.head for e in root.out_edges]
    assert len(children) == 4
    assert all(c.properties["type"] == QUAD for c in children)
    assert Rect.of(children[0]) == Rect(0, 0, 50, 50)
    check_quadgraph(g, root, capacity=4)


def test_split_line_goes_to_first_quadrant():
    pts = [(i, Rect.point(50, 50)) for i in range(2)] + [(2, Rect.point(90, 90))]
    g, root = quadtree_build(pts, Rect(0, 0, 100, 100), 2)
    sw = root.out_edges[0].head
    assert sorted(e.head.id for e in sw.out_edges) == [0, 1]


def test_straddling_rect_stays_on_parent():
    pts = [(0, Rect(40, 40, 60, 60))] + [(i, Rect.point(10, 10 + i)) for i in range(1, 4)]
    g, root = quadtree_build(pts, Rect(0, 0, 100, 100), 2)
    assert 0 in [e.head.id for e in root.out_edges]
    check_quadgraph(g, root)


def test_max_depth_stops_splitting():
    pts = [(i, Rect.point(3, 3)) for i in range(10)]
    g, root = quadtree_build(pts, Rect(0, 0, 100, 100), 1, max_depth=5)
    check_quadgraph(g, root, capacity=1, max_depth=5)
    assert region_query(g, root, Rect(0, 0, 5, 5)).ids() == {i: 1 for i in range(10)}


def test_build_errors():
    with pytest.raises(PointOutOfWorld):
        quadtree_build([(0, Rect.point(200, 1))], Rect(0, 0, 100, 100))
    with pytest.raises(ValueError):
        quadtree_build([], Rect(0, 0, 1, 1), 0)


def test_build_empty():
    g, root = quadtree_build([], Rect(0, 0, 1, 1))
    assert root.out_edges == []
    assert region_query(g, root, Rect(0, 0, 1, 1)) == Multiset.vertices()


def test_read_points():
    pts = read_points(["# pts", "P 3 1 2 1 2", "", "P 4 0 0 5 5.5"])
    assert pts == [(3, Rect(1, 2, 1, 2)), (4, Rect(0, 0, 5, 5.5))]
    for bad in (["Q 1 0 0 0 0"], ["P 1 0 0 0"], ["P x 0 0 0 0"], ["P 1 5 0 0 0"], ["P -1 0 0 0 0"]):
        with pytest.raises(ParseError):
            read_points(bad)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_structural_invariants(seed):
    rng = random.Random(seed)
    g, root, points, cap = random_quadtree(rng, rng.randint(0, 300))
    check_quadgraph(g, root, capacity=cap)
    pois = [v for v in g.iter_vertices() if v.properties["type"] == POI]
    assert len(pois) == len(points)
    for p in pois:
        assert sum(1 for e in p.in_edges if e.label == SUB) == 1


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_modes_match_brute_force(seed):
    rng = random.Random(seed)
    g, root, _, _ = random_quadtree(rng, rng.randint(0, 400))
    for _ in range(5):
        q = random_query(rng)
        expected = brute_force_region(g, q)
        naive = region_query_naive(g, root, q)
        opt = region_query_optimized(g, root, q)
        assert naive == opt == expected
        assert all(n == 1 for _, n in opt.items())


# ---------------------------------------------------------------- accounting


def _cost(rect, checks):
    """Comparisons a chain of allow filters spends on one element."""
    for i, ok in enumerate(checks(rect), 1):
        if not ok:
            return i
    return 4


def _overlap_checks(q):
    return lambda r: (r.bl_x <= q.tr_x, r.bl_y <= q.tr_y, r.tr_x >= q.bl_x, r.tr_y >= q.bl_y)


def _within_checks(q):
    return lambda r: (r.bl_x >= q.bl_x, r.bl_y >= q.bl_y, r.tr_x <= q.tr_x, r.tr_y <= q.tr_y)


def _children(v):
    return [e.head for e in v.out_edges if e.label == SUB]


def predicted_costs(root, q):
    """Walk the tree by hand and price both query modes.

    Returns (naive, containment, skipped): the naive bbox total, the
    comparisons the containment checks add, and the naive comparisons on
    vertices below promoted quads that the optimized query never makes.
    """
    naive = containment = skipped = 0
    frontier = [root]
    while frontier:
        nxt = []
        for quad in frontier:
            for c in _children(quad):
                naive += _cost(Rect.of(c), _overlap_checks(q))
                if c.properties["type"] == QUAD and rect_overlaps(Rect.of(c), q):
                    nxt.append(c)
        frontier = nxt

    def below(v):
        return sum(4 + below(c) for c in _children(v))

    a = [root]
    while a:
        nxt = []
        for quad in a:
            containment += _cost(Rect.of(quad), _within_checks(q))
            if rect_within(Rect.of(quad), q):
                skipped += below(quad)
                continue
            nxt.extend(c for c in _children(quad)
                       if c.properties["type"] == QUAD and rect_overlaps(Rect.of(c), q))
        a = nxt
    return naive, containment, skipped


def test_fixture_accounting(quad):
    naive, containment, skipped = predicted_costs(quad.vertex(1), QUERY)
    assert (naive, containment, skipped) == (44, 8, 16)
    assert naive - skipped + containment == 36


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_optimized_cost_identity(seed):
    rng = random.Random(seed)
    g, root, _, _ = random_quadtree(rng, rng.randint(0, 300))
    q = random_query(rng)
    c_naive, c_opt = OpCounter(), OpCounter()
    region_query_naive(g, root, q, c_naive)
    region_query_optimized(g, root, q, c_opt)
    naive, containment, skipped = predicted_costs(root, q)
    assert c_naive.bounding_box_comparisons() == naive
    assert c_opt.bounding_box_comparisons() == naive - skipped + containment


def _some_quad_inside(g, q):
    return any(v.properties["type"] == QUAD and rect_within(Rect.of(v), q) for v in g.iter_vertices())


@functools.cache
def _cost_pairs(cases):
    rng = random.Random(2024)
    out = []
    for _ in range(cases):
        g, root, _, _ = random_quadtree(rng, rng.randint(1, 2000))
        q = random_query(rng)
        c_naive, c_opt = OpCounter(), OpCounter()
        region_query_naive(g, root, q, c_naive)
        region_query_optimized(g, root, q, c_opt)
        out.append((g, q, c_naive.bounding_box_comparisons(), c_opt.bounding_box_comparisons()))
    return out


@pytest.mark.xfail(strict=True, reason="containment checks on every overlapping quad can outweigh the savings")
def test_optimized_never_costlier_on_random_trees():
    for _, _, naive, opt in _cost_pairs(100):
        assert opt <= naive


@pytest.mark.xfail(strict=True, reason="a contained leaf with few pois saves less than the containment checks cost")
def test_optimized_strictly_cheaper_when_a_quad_is_inside():
    for g, q, naive, opt in _cost_pairs(100):
        if _some_quad_inside(g, q):
            assert opt < naive


def test_optimized_saves_on_large_contained_regions():
    # a query covering a whole quadrant of a dense tree
    rng = random.Random(7)
    pts = [(i, Rect.point(rng.uniform(0, 1000), rng.uniform(0, 1000))) for i in range(2000)]
    g, root = quadtree_build(pts, Rect(0, 0, 1000, 1000), 4)
    q = Rect(0, 0, 500, 500)
    c_naive, c_opt = OpCounter(), OpCounter()
    assert region_query_naive(g, root, q, c_naive) == region_query_optimized(g, root, q, c_opt)
    assert c_opt.bounding_box_comparisons() < c_naive.bounding_box_comparisons() / 2
