"""Embedded property graph with index-free adjacency and a traversal algebra."""

from .counters import OpCounter
from .errors import (
    DanglingEndpoint,
    DuplicateId,
    DuplicateName,
    GraphError,
    KindMismatch,
    MissingName,
    NameNotFound,
    ParseError,
    PointOutOfWorld,
    TypeMismatch,
)
from .graph import Edge, Graph, Vertex, get_property, head, in_edges, out_edges, tail
from .index import OrderedIndex, index_build, index_lookup
from .notation import parse_traversal
from .traversal import (
    EIn,
    ElementFilter,
    EOut,
    Kind,
    LabelFilter,
    Multiset,
    PropFilter,
    Props,
    Traversal,
    VIn,
    VOut,
    compose,
    dedupe,
    evaluate,
    iterate,
    rank,
)

__version__ = "0.1.0"
