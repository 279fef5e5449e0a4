"""Quadtree index stored inside the graph, queried by traversal.

Quad vertices (``type="quad"``) and point-of-interest vertices
(``type="poi"``) carry ``bl_x, bl_y, tr_x, tr_y``; a ``sub`` edge runs from a
region to each region or poi it subsumes.

Two region queries are provided. The naive one repeatedly expands the
frontier through ``sub`` edges, keeping only vertices that overlap the
query. The optimized one additionally promotes quads lying wholly inside
the query to a second frontier whose descendants are emitted without any
bounding-box checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .counters import OpCounter
from .errors import ParseError, PointOutOfWorld
from .graph import Graph, Vertex
from .traversal import EOut, LabelFilter, Multiset, PropFilter, VIn, compose

SUB = "sub"
QUAD = "quad"
POI = "poi"
MAX_DEPTH = 16


@dataclass(frozen=True)
class Rect:
    bl_x: float
    bl_y: float
    tr_x: float
    tr_y: float

    def __post_init__(self):
        if self.bl_x > self.tr_x or self.bl_y > self.tr_y:
            raise ValueError(f"bottom-left must not exceed top-right: {self}")

    @classmethod
    def of(cls, element) -> Rect:
        p = element.properties
        return cls(p["bl_x"], p["bl_y"], p["tr_x"], p["tr_y"])

    @classmethod
    def point(cls, x: float, y: float) -> Rect:
        return cls(x, y, x, y)

    def props(self) -> dict[str, float]:
        return {"bl_x": float(self.bl_x), "bl_y": float(self.bl_y),
                "tr_x": float(self.tr_x), "tr_y": float(self.tr_y)}

    def quadrants(self) -> tuple[Rect, Rect, Rect, Rect]:
        """SW, SE, NW, NE halves."""
        mx = (self.bl_x + self.tr_x) / 2
        my = (self.bl_y + self.tr_y) / 2
        return (
            Rect(self.bl_x, self.bl_y, mx, my),
            Rect(mx, self.bl_y, self.tr_x, my),
            Rect(self.bl_x, my, mx, self.tr_y),
            Rect(mx, my, self.tr_x, self.tr_y),
        )


def rect_overlaps(a: Rect, q: Rect) -> bool:
    """True when `a` touches or lies inside `q`; shared boundaries count."""
    return a.tr_x >= q.bl_x and a.tr_y >= q.bl_y and a.bl_x <= q.tr_x and a.bl_y <= q.tr_y


def rect_within(a: Rect, q: Rect) -> bool:
    return a.bl_x >= q.bl_x and a.bl_y >= q.bl_y and a.tr_x <= q.tr_x and a.tr_y <= q.tr_y


# ---------------------------------------------------------------- traversals


def overlap_filters(q: Rect) -> list[PropFilter]:
    return [
        PropFilter("bl_x", "<=", q.tr_x),
        PropFilter("bl_y", "<=", q.tr_y),
        PropFilter("tr_x", ">=", q.bl_x),
        PropFilter("tr_y", ">=", q.bl_y),
    ]


def within_filters(q: Rect) -> list[PropFilter]:
    return [
        PropFilter("bl_x", ">=", q.bl_x),
        PropFilter("bl_y", ">=", q.bl_y),
        PropFilter("tr_x", "<=", q.tr_x),
        PropFilter("tr_y", "<=", q.tr_y),
    ]


_CHILDREN = compose(EOut(), LabelFilter(SUB), VIn())
_IS_QUAD = PropFilter("type", "=", QUAD)
_IS_POI = PropFilter("type", "=", POI)


@dataclass(frozen=True)
class RegionPlan:
    """The five traversals of the optimized query for one query rectangle.

    expand (A->A) and emit (A->C) check overlap; promote (A->B) checks
    containment; descend (B->B) and collect (B->C) check nothing.
    """

    naive: object
    expand: object
    promote: object
    descend: object
    emit: object
    collect: object

    @classmethod
    def for_query(cls, q: Rect) -> RegionPlan:
        overlap = overlap_filters(q)
        return cls(
            naive=compose(_CHILDREN, overlap),
            expand=compose(_CHILDREN, _IS_QUAD, overlap),
            promote=compose(within_filters(q)),
            descend=compose(_CHILDREN, _IS_QUAD),
            emit=compose(_CHILDREN, _IS_POI, overlap),
            collect=compose(_CHILDREN, _IS_POI),
        )


def _split_types(ms: Multiset) -> tuple[Multiset, Multiset]:
    quads = ms.where(lambda v: v.properties.get("type") == QUAD)
    pois = ms.where(lambda v: v.properties.get("type") == POI)
    return quads, pois


def naive_iterations(root: Vertex, query: Rect, counter: OpCounter | None = None) -> Iterator[Multiset]:
    """Yield the output of each application of the overlap-filtered expansion.

    Quads in an output continue to the next application; pois are final.
    Stops once no quads remain.
    """
    step = RegionPlan.for_query(query).naive
    frontier = Multiset.vertices(root)
    while frontier:
        out = step(frontier, counter)
        yield out
        frontier, _ = _split_types(out)


def region_query_naive(graph: Graph, root: Vertex, query: Rect, counter: OpCounter | None = None) -> Multiset:
    result = Multiset.vertices()
    for out in naive_iterations(root, query, counter):
        result = result + _split_types(out)[1]
    return result


def region_query_optimized(graph: Graph, root: Vertex, query: Rect, counter: OpCounter | None = None) -> Multiset:
    plan = RegionPlan.for_query(query)
    overlapping = Multiset.vertices(root)   # A
    inside = Multiset.vertices()            # B
    result = Multiset.vertices()            # C
    while overlapping or inside:
        promoted = plan.promote(overlapping, counter)
        partial = overlapping - promoted
        inside = inside + promoted
        result = result + plan.emit(partial, counter) + plan.collect(inside, counter)
        overlapping = plan.expand(partial, counter)
        inside = plan.descend(inside, counter)
    return result


def region_query(graph: Graph, root: Vertex, query: Rect, mode: str = "optimized",
                 counter: OpCounter | None = None) -> Multiset:
    if mode == "naive":
        return region_query_naive(graph, root, query, counter)
    if mode == "optimized":
        return region_query_optimized(graph, root, query, counter)
    raise ValueError(f"unknown query mode {mode!r}")


def brute_force_region(graph: Graph, query: Rect) -> Multiset:
    """Scan every poi in the graph; the oracle for both query modes."""
    return Multiset.vertices(*(
        v for v in graph.iter_vertices()
        if v.properties.get("type") == POI and rect_overlaps(Rect.of(v), query)
    ))


def find_root(graph: Graph) -> Vertex:
    roots = [
        v for v in graph.iter_vertices()
        if v.properties.get("type") == QUAD and not any(e.label == SUB for e in v.in_edges)
    ]
    if len(roots) != 1:
        raise ValueError(f"expected exactly one root quad, found {len(roots)}")
    return roots[0]


# ---------------------------------------------------------------- building


def quadtree_build(points: Iterable[tuple[int, Rect]], world: Rect, capacity: int = 4,
                   max_depth: int = MAX_DEPTH, graph: Graph | None = None) -> tuple[Graph, Vertex]:
    """Point-region quadtree over `points`, written into `graph` as vertices and sub edges.

    A quad splits into four equal quadrants once it holds more than
    `capacity` pois, unless it is at `max_depth`. A poi goes to the first
    quadrant (SW, SE, NW, NE) that contains it; one that straddles a split
    line stays on the parent. Quad ids start after the largest poi id.
    """
    if capacity < 1:
        raise ValueError("capacity must be at least 1")
    points = list(points)
    for pid, r in points:
        if not rect_within(r, world):
            raise PointOutOfWorld(f"poi {pid} {r} lies outside the world {world}")
    graph = graph if graph is not None else Graph()
    next_quad = max([pid for pid, _ in points] + [graph.next_vertex_id() - 1]) + 1
    next_edge = graph.next_edge_id()

    for pid, r in points:
        graph.add_vertex(pid, {"type": POI, **r.props()})

    def new_quad(region: Rect) -> Vertex:
        nonlocal next_quad
        v = graph.add_vertex(next_quad, {"type": QUAD, **region.props()})
        next_quad += 1
        return v

    def link(parent: Vertex, child_id: int) -> None:
        nonlocal next_edge
        graph.add_edge(next_edge, SUB, parent.id, child_id)
        next_edge += 1

    root = new_quad(world)
    # breadth-first so quad ids grow level by level
    pending = [(root, world, points, 0)]
    while pending:
        nxt = []
        for quad, region, members, depth in pending:
            if len(members) <= capacity or depth >= max_depth:
                for pid, _ in members:
                    link(quad, pid)
                continue
            buckets: list[list] = [[], [], [], []]
            stay = []
            quads = region.quadrants()
            for pid, r in members:
                for i, sub in enumerate(quads):
                    if rect_within(r, sub):
                        buckets[i].append((pid, r))
                        break
                else:
                    stay.append((pid, r))
            for pid, _ in stay:
                link(quad, pid)
            for sub, bucket in zip(quads, buckets):
                child = new_quad(sub)
                link(quad, child.id)
                nxt.append((child, sub, bucket, depth + 1))
        pending = nxt
    return graph, root


def check_quadgraph(graph: Graph, root: Vertex, capacity: int | None = None,
                    max_depth: int = MAX_DEPTH) -> None:
    """Raise AssertionError if the structure below `root` is not a valid quadtree."""
    assert root.properties.get("type") == QUAD
    seen: set[int] = set()
    stack = [(root, 0)]
    while stack:
        v, depth = stack.pop()
        assert v.id not in seen, f"vertex {v.id} reached twice"
        seen.add(v.id)
        region = Rect.of(v)
        children = [e.head for e in v.out_edges if e.label == SUB]
        if v.properties.get("type") == POI:
            assert not children, f"poi {v.id} has sub edges"
            continue
        assert v.properties.get("type") == QUAD, f"vertex {v.id} has no valid type"
        for c in children:
            assert rect_within(Rect.of(c), region), f"{c.id} escapes parent {v.id}"
            stack.append((c, depth + 1))
        child_quads = [c for c in children if c.properties["type"] == QUAD]
        if capacity is not None and not child_quads:
            pois = [c for c in children if c.properties["type"] == POI]
            assert len(pois) <= capacity or depth >= max_depth, f"leaf {v.id} holds {len(pois)} pois"


def read_points(lines: Iterable[str], source: str | None = None) -> list[tuple[int, Rect]]:
    """Parse ``P <id> <bl_x> <bl_y> <tr_x> <tr_y>`` records; ``#`` starts a comment line."""
    points = []
    for lineno, line in enumerate(lines, 1):
        fields = line.split()
        if not fields or fields[0].startswith("#"):
            continue
        if fields[0] != "P" or len(fields) != 6:
            raise ParseError("expected: P <id> <bl_x> <bl_y> <tr_x> <tr_y>", lineno, 1, source)
        try:
            pid = int(fields[1])
            if pid < 0:
                raise ValueError("ids must be non-negative")
            points.append((pid, Rect(*(float(f) for f in fields[2:]))))
        except ValueError as exc:
            raise ParseError(str(exc), lineno, None, source) from None
    return points
