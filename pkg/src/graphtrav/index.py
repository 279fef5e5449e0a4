"""Ordered (key, value) -> vertices index used as a traversal entry point."""

from __future__ import annotations

import threading
from typing import Callable, Sequence

from .counters import OpCounter
from .graph import Graph, Vertex, value_sort_key
from .traversal import Multiset


def counted_search(keys: Sequence, target, counter: OpCounter | None = None, *,
                   step: str | None = None, key: Callable = lambda x: x) -> int:
    """Three-way binary search over sorted `keys`; returns index or -1.

    Each probe counts as one comparison, so a search over n keys costs at
    most floor(log2 n) + 1 comparisons.
    """
    lo, hi = 0, len(keys) - 1
    t = key(target)
    while lo <= hi:
        mid = (lo + hi) // 2
        probe = key(keys[mid])
        if counter is not None:
            counter.compare(step=step)
        if probe == t:
            return mid
        if probe < t:
            lo = mid + 1
        else:
            hi = mid - 1
    return -1


class OrderedIndex:
    """Sorted distinct values of one property key, each mapped to its vertices.

    Values of different types under the same key are ordered by type tag
    first. The comparison total is accumulated under a lock so lookups may
    run from several threads.
    """

    def __init__(self, key: str):
        self.key = key
        self._values: list = []
        self._sort_keys: list = []
        self._vertices: list[list[Vertex]] = []
        self._lock = threading.Lock()
        self.comparisons = 0

    def __len__(self) -> int:
        return sum(len(vs) for vs in self._vertices)

    @property
    def distinct_values(self) -> int:
        return len(self._values)

    def values(self) -> list:
        return list(self._values)

    def insert(self, vertex: Vertex) -> None:
        value = vertex.properties.get(self.key)
        if value is None:
            return
        sk = value_sort_key(value)
        # bisect by hand to keep the parallel lists aligned
        lo, hi = 0, len(self._sort_keys)
        while lo < hi:
            mid = (lo + hi) // 2
            if self._sort_keys[mid] < sk:
                lo = mid + 1
            else:
                hi = mid
        if lo < len(self._sort_keys) and self._sort_keys[lo] == sk:
            self._vertices[lo].append(vertex)
        else:
            self._sort_keys.insert(lo, sk)
            self._values.insert(lo, value)
            self._vertices.insert(lo, [vertex])

    def lookup(self, value, counter: OpCounter | None = None) -> Multiset:
        local = OpCounter()
        pos = counted_search(self._sort_keys, value_sort_key(value), local, step="index")
        with self._lock:
            self.comparisons += local.comparisons
        if counter is not None:
            counter.compare(local.comparisons, key=f"@index:{self.key}", step="index")
        if pos < 0:
            return Multiset.vertices()
        if counter is not None:
            counter.touch(len(self._vertices[pos]))
        return Multiset.vertices(*self._vertices[pos])


def index_build(graph: Graph, key: str) -> OrderedIndex:
    idx = OrderedIndex(key)
    entries = [(value_sort_key(v.properties[key]), v) for v in graph.iter_vertices() if key in v.properties]
    entries.sort(key=lambda p: (p[0], p[1].id))
    for sk, v in entries:
        if idx._sort_keys and idx._sort_keys[-1] == sk:
            idx._vertices[-1].append(v)
        else:
            idx._sort_keys.append(sk)
            idx._values.append(v.properties[key])
            idx._vertices.append([v])
    return idx


def index_lookup(idx: OrderedIndex, value, counter: OpCounter | None = None) -> Multiset:
    return idx.lookup(value, counter)
