"""In-memory property graph with index-free adjacency.

Every vertex holds direct references to its incident edges and every edge
holds direct references to its two endpoints, so moving to an adjacent
element never consults a global structure.
"""

from __future__ import annotations

import math
from typing import Iterable, Iterator, Mapping, Union

from .counters import OpCounter
from .errors import DanglingEndpoint, DuplicateId, InvalidProperty

PropertyValue = Union[str, int, float, bool]

INT64_MIN = -(2**63)
INT64_MAX = 2**63 - 1


def check_property(key, value) -> None:
    if not isinstance(key, str) or not key:
        raise InvalidProperty(f"property keys must be nonempty strings, got {key!r}")
    if isinstance(value, bool) or isinstance(value, str):
        return
    if isinstance(value, int):
        if not INT64_MIN <= value <= INT64_MAX:
            raise InvalidProperty(f"integer {value} for {key!r} does not fit in 64 bits")
        return
    if isinstance(value, float):
        return
    raise InvalidProperty(f"unsupported value type {type(value).__name__} for {key!r}")


def is_numeric(value) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool)


class Element:
    __slots__ = ("id", "properties")

    kind = ""

    def __init__(self, id: int, properties: Mapping[str, PropertyValue] | None = None):
        self.id = id
        self.properties = dict(properties or {})

    @property
    def ref(self) -> tuple[str, int]:
        return (self.kind, self.id)

    def get(self, key: str, default=None):
        return self.properties.get(key, default)


class Vertex(Element):
    __slots__ = ("out_edges", "in_edges")

    kind = "v"

    def __init__(self, id: int, properties: Mapping[str, PropertyValue] | None = None):
        super().__init__(id, properties)
        self.out_edges: list[Edge] = []
        self.in_edges: list[Edge] = []

    def __repr__(self) -> str:
        return f"Vertex({self.id})"


class Edge(Element):
    __slots__ = ("label", "tail", "head")

    kind = "e"

    def __init__(self, id: int, label: str, tail: Vertex, head: Vertex,
                 properties: Mapping[str, PropertyValue] | None = None):
        super().__init__(id, properties)
        self.label = label
        self.tail = tail
        self.head = head

    def __repr__(self) -> str:
        return f"Edge({self.id}: {self.tail.id}-{self.label}->{self.head.id})"


def _check_id(id) -> None:
    if isinstance(id, bool) or not isinstance(id, int) or id < 0:
        raise InvalidProperty(f"element ids must be non-negative integers, got {id!r}")


class Graph:
    """Directed, edge-labeled, attributed multigraph.

    Construction is the only mutation; once built, a graph may be read from
    many threads at once.
    """

    def __init__(self):
        self.vertices: dict[int, Vertex] = {}
        self.edges: dict[int, Edge] = {}

    def __len__(self) -> int:
        return len(self.vertices)

    def __repr__(self) -> str:
        return f"Graph(|V|={len(self.vertices)}, |E|={len(self.edges)})"

    def add_vertex(self, id: int, props: Mapping[str, PropertyValue] | None = None) -> Vertex:
        _check_id(id)
        if id in self.vertices:
            raise DuplicateId(f"vertex {id} already exists")
        props = dict(props or {})
        for k, v in props.items():
            check_property(k, v)
        vertex = Vertex(id, props)
        self.vertices[id] = vertex
        return vertex

    def add_edge(self, id: int, label: str, tail: int, head: int,
                 props: Mapping[str, PropertyValue] | None = None) -> Edge:
        _check_id(id)
        if id in self.edges:
            raise DuplicateId(f"edge {id} already exists")
        if not isinstance(label, str) or not label:
            raise InvalidProperty("edge labels must be nonempty strings")
        try:
            tail_v = self.vertices[tail]
            head_v = self.vertices[head]
        except KeyError as exc:
            raise DanglingEndpoint(f"edge {id} refers to missing vertex {exc.args[0]}") from None
        props = dict(props or {})
        for k, v in props.items():
            check_property(k, v)
        edge = Edge(id, label, tail_v, head_v, props)
        self.edges[id] = edge
        tail_v.out_edges.append(edge)
        head_v.in_edges.append(edge)
        return edge

    def vertex(self, id: int) -> Vertex:
        return self.vertices[id]

    def edge(self, id: int) -> Edge:
        return self.edges[id]

    def next_vertex_id(self) -> int:
        return max(self.vertices, default=-1) + 1

    def next_edge_id(self) -> int:
        return max(self.edges, default=-1) + 1

    def iter_vertices(self) -> Iterator[Vertex]:
        return iter(self.vertices.values())

    def iter_edges(self) -> Iterator[Edge]:
        return iter(self.edges.values())

    def check(self) -> None:
        """Assert the bidirectional adjacency invariants (test helper)."""
        entries = 0
        for v in self.vertices.values():
            for e in v.out_edges:
                assert e.tail is v and self.edges.get(e.id) is e
            for e in v.in_edges:
                assert e.head is v and self.edges.get(e.id) is e
            entries += len(v.out_edges) + len(v.in_edges)
        for e in self.edges.values():
            assert self.vertices.get(e.tail.id) is e.tail
            assert self.vertices.get(e.head.id) is e.head
            assert e in e.tail.out_edges and e in e.head.in_edges
        assert entries == 2 * len(self.edges)


# Local access; each touches only the element it is handed and its own lists.

def out_edges(vertex: Vertex, counter: OpCounter | None = None) -> list[Edge]:
    if counter is not None:
        counter.touch(1 + len(vertex.out_edges))
    return vertex.out_edges


def in_edges(vertex: Vertex, counter: OpCounter | None = None) -> list[Edge]:
    if counter is not None:
        counter.touch(1 + len(vertex.in_edges))
    return vertex.in_edges


def tail(edge: Edge, counter: OpCounter | None = None) -> Vertex:
    if counter is not None:
        counter.touch(1)
    return edge.tail


def head(edge: Edge, counter: OpCounter | None = None) -> Vertex:
    if counter is not None:
        counter.touch(1)
    return edge.head


def get_property(element: Element, key: str, counter: OpCounter | None = None):
    """Return the value for `key`, or None when the element lacks it."""
    if counter is not None:
        counter.touch(1)
    return element.properties.get(key)


def from_elements(vertices: Iterable[tuple[int, Mapping]], edges: Iterable[tuple[int, str, int, int, Mapping]]) -> Graph:
    g = Graph()
    for vid, props in vertices:
        g.add_vertex(vid, props)
    for eid, label, t, h, props in edges:
        g.add_edge(eid, label, t, h, props)
    return g


def values_equal(a, b) -> bool:
    """Equality that keeps booleans, numbers and strings apart."""
    if isinstance(a, bool) or isinstance(b, bool):
        return isinstance(a, bool) and isinstance(b, bool) and a == b
    if is_numeric(a) and is_numeric(b):
        if isinstance(a, float) and math.isnan(a):
            return False
        return a == b
    return type(a) is type(b) and a == b


def value_sort_key(value) -> tuple:
    """Total order over property values: by type tag, then value."""
    if isinstance(value, bool):
        return (0, value)
    if is_numeric(value):
        # NaN sorts after every other number
        return (1, 1, 0.0) if isinstance(value, float) and math.isnan(value) else (1, 0, value)
    return (2, value)
