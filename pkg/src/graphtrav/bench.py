"""Join-vs-traversal workload: random social graphs and per-query cost rows."""

from __future__ import annotations

import math
import random
import statistics
import time
from dataclasses import dataclass

from .counters import OpCounter
from .graph import Graph
from .index import OrderedIndex, index_build
from .relational import FriendTable, PersonTable, friends_of_name, tables_from_graph
from .traversal import Multiset, friend_names

COLUMNS = ("n", "degree", "engine", "comparisons", "elements_touched", "wall_ns")


def person_name(i: int) -> str:
    return f"person-{i:07d}"


def social_graph(n: int, degree: int, rng: random.Random, exact: bool = True) -> Graph:
    """`n` named people with directed friend edges to distinct others.

    With `exact`, everyone has out-degree min(degree, n-1); otherwise each
    out-degree is drawn uniformly from 0..degree.
    """
    g = Graph()
    for i in range(n):
        g.add_vertex(i, {"name": person_name(i)})
    eid = 0
    cap = max(n - 1, 0)
    for i in range(n):
        k = min(degree if exact else rng.randint(0, degree), cap)
        for j in rng.sample(range(cap), k):
            g.add_edge(eid, "friend", i, j + 1 if j >= i else j)
            eid += 1
    return g


@dataclass
class Workload:
    n: int
    degree: int
    graph: Graph
    tables: tuple[PersonTable, FriendTable]
    name_index: OrderedIndex

    @classmethod
    def build(cls, n: int, degree: int, rng: random.Random, exact: bool = True) -> Workload:
        g = social_graph(n, degree, rng, exact)
        return cls(n, degree, g, tables_from_graph(g), index_build(g, "name"))

    def sample_names(self, count: int, rng: random.Random) -> list[str]:
        ids = rng.sample(range(self.n), min(count, self.n))
        return [person_name(i) for i in ids]


_FRIEND_NAMES = friend_names()


def graph_query(w: Workload, name, counter: OpCounter) -> Multiset:
    start = w.name_index.lookup(name, counter)
    return _FRIEND_NAMES(start, counter)


def relational_query(w: Workload, name, counter: OpCounter) -> Multiset:
    return friends_of_name(w.tables, name, counter)[0]


ENGINES = {"relational": relational_query, "graph": graph_query}


def measure(w: Workload, names: list) -> list[dict]:
    rows = []
    for name in names:
        for engine, fn in ENGINES.items():
            counter = OpCounter()
            t0 = time.perf_counter_ns()
            fn(w, name, counter)
            wall = time.perf_counter_ns() - t0
            rows.append({
                "n": w.n, "degree": w.degree, "engine": engine,
                "comparisons": counter.comparisons, "elements_touched": counter.touched,
                "wall_ns": wall,
            })
    return rows


def join_vs_traversal(sizes: list[int], degree: int, seed: int, queries: int = 20) -> list[dict]:
    rows = []
    for n in sizes:
        # one stream per size so adding a size leaves the others unchanged
        rng = random.Random(f"{seed}:{n}:{degree}")
        w = Workload.build(n, degree, rng)
        rows.extend(measure(w, w.sample_names(queries, rng)))
    return rows


def model_comparisons(n: int, k: int, x: int | None = None) -> float:
    """Index-search comparisons of the six-step join: log2 n + log2 x + k log2 n."""
    x = n if x is None else x
    return math.log2(n) + math.log2(max(x, 1)) + k * math.log2(n)


def model_slope(k: int) -> float:
    """d(comparisons)/d(log2 n) under the model when every person has friends (x = n)."""
    return k + 2.0


def slope_vs_log2n(rows: list[dict], engine: str = "relational", column: str = "comparisons") -> float:
    pts = [(math.log2(r["n"]), r[column]) for r in rows if r["engine"] == engine]
    xs, ys = zip(*pts)
    return statistics.linear_regression(xs, ys).slope


def summarize(rows: list[dict]) -> list[dict]:
    """Mean comparisons and touched counts per (n, engine), in input order."""
    groups: dict[tuple, list[dict]] = {}
    for r in rows:
        groups.setdefault((r["n"], r["degree"], r["engine"]), []).append(r)
    out = []
    for (n, degree, engine), rs in groups.items():
        out.append({
            "n": n, "degree": degree, "engine": engine, "queries": len(rs),
            "comparisons": statistics.fmean(r["comparisons"] for r in rs),
            "elements_touched": statistics.fmean(r["elements_touched"] for r in rs),
        })
    return out
