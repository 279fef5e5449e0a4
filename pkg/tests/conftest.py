import random

import pytest
from hypothesis import strategies as st

from graphtrav.fixtures import by_name, friends_graph, quad_graph, rec_graph
from graphtrav.graph import Graph
from graphtrav.spatial import Rect, quadtree_build


@pytest.fixture
def friends():
    return friends_graph()


@pytest.fixture
def rec():
    return rec_graph()


@pytest.fixture
def quad():
    return quad_graph()


@pytest.fixture
def quad_names(quad):
    return by_name(quad)


QUERY = Rect(25, 20, 90, 45)

LABELS = ("friend", "likes", "sub")


def random_graph(rng: random.Random, n: int, m: int, labels=LABELS) -> Graph:
    g = Graph()
    for i in range(n):
        props = {"name": f"v{i}", "w": rng.randint(0, 5)}
        if rng.random() < 0.3:
            props["type"] = rng.choice(["quad", "poi"])
        g.add_vertex(i, props)
    for j in range(m if n else 0):
        props = {"w": rng.randint(0, 5)} if rng.random() < 0.5 else {}
        g.add_edge(j, rng.choice(labels), rng.randrange(n), rng.randrange(n), props)
    return g


@st.composite
def graphs(draw, max_vertices=12, max_edges=30):
    seed = draw(st.integers(0, 2**32 - 1))
    n = draw(st.integers(0, max_vertices))
    m = draw(st.integers(0, max_edges))
    return random_graph(random.Random(seed), n, m)


def random_quadtree(rng: random.Random, n: int, capacity: int | None = None):
    world = Rect(0, 0, 1000, 1000)
    points = []
    for pid in range(n):
        x, y = rng.uniform(0, 1000), rng.uniform(0, 1000)
        if rng.random() < 0.2:
            w, h = rng.uniform(0, 50), rng.uniform(0, 50)
            points.append((pid, Rect(min(x, 1000 - w), min(y, 1000 - h), min(x, 1000 - w) + w, min(y, 1000 - h) + h)))
        else:
            points.append((pid, Rect.point(x, y)))
    cap = capacity if capacity is not None else rng.randint(1, 8)
    g, root = quadtree_build(points, world, cap)
    return g, root, points, cap


def random_query(rng: random.Random) -> Rect:
    x0, x1 = sorted(rng.uniform(-50, 1050) for _ in range(2))
    y0, y1 = sorted(rng.uniform(-50, 1050) for _ in range(2))
    return Rect(x0, y0, x1, y1)


# one line per acceptance criterion, printed after the run
ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE):
            terminalreporter.write_line(line)
