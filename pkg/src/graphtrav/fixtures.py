"""Bundled example graphs."""

from __future__ import annotations

from importlib import resources

from . import textformat
from .graph import Graph

NAMES = ("friends", "rec", "quad")


def fixture_text(name: str) -> str:
    if name not in NAMES:
        raise KeyError(f"unknown fixture {name!r}; choose from {', '.join(NAMES)}")
    return resources.files("graphtrav").joinpath("fixtures", f"{name}.graph").read_text(encoding="utf-8")


def load_fixture(name: str) -> Graph:
    return textformat.loads(fixture_text(name), source=f"@{name}")


def friends_graph() -> Graph:
    """Vertex 1 ("Alberto Pepe") with friend edges to vertices 2, 3 and 4."""
    return load_fixture("friends")


def rec_graph() -> Graph:
    return load_fixture("rec")


def quad_graph() -> Graph:
    return load_fixture("quad")


def by_name(graph: Graph, key: str = "name") -> dict:
    return {v.properties[key]: v for v in graph.iter_vertices() if key in v.properties}
