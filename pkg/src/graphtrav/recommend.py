"""Content-based and collaborative recommendation as traversals.

The graph holds people, resources and features; ``likes`` edges run
person -> resource and ``feature`` edges run resource -> feature. Every
function is linear over its input, so recommending from a multiset of
starting vertices sums the per-vertex results.
"""

from __future__ import annotations

from .errors import KindMismatch
from .graph import Vertex
from .traversal import EIn, ElementFilter, EOut, Kind, LabelFilter, Multiset, VIn, VOut, compose, rank, union

LIKES = "likes"
FEATURE = "feature"


def _out_and_back(label: str):
    return compose(EOut(), LabelFilter(label), VIn(), EIn(), LabelFilter(label), VOut())


SHARED_FEATURE = _out_and_back(FEATURE)
CO_LIKERS = _out_and_back(LIKES)
LIKED = compose(EOut(), LabelFilter(LIKES), VIn())


def _excluding_start(path, start: Multiset, counter=None) -> Multiset:
    # the trailing element filter removes each start vertex from its own result
    parts = [
        compose(path, ElementFilter(v, allow=False))(Multiset.vertices(v), counter).scaled(n)
        for v, n in start.items()
    ]
    return union(Kind.VERTEX, parts)


def _start(x) -> Multiset:
    return x if isinstance(x, Multiset) else Multiset.vertices(x)


def content_similar(resource: Vertex | Multiset, counter=None) -> Multiset:
    """Resources sharing a feature with `resource`, one occurrence per shared feature."""
    start = _start(resource)
    for v in start.support():
        if v.properties.get("type") != "resource":
            raise KindMismatch(f"vertex {v.id} is not a resource")
    return _excluding_start(SHARED_FEATURE, start, counter)


def liked_resources(person: Vertex | Multiset, counter=None) -> Multiset:
    return LIKED(_start(person), counter)


def cofavored_people(person: Vertex | Multiset, counter=None) -> Multiset:
    """People who like what `person` likes; multiplicity = number of co-liked resources."""
    return _excluding_start(CO_LIKERS, _start(person), counter)


def _drop_liked(ms: Multiset, person: Vertex) -> Multiset:
    liked = liked_resources(person).support()
    return ms.where(lambda v: v not in liked)


def content_recommend_multiset(person: Vertex, exclude_liked: bool = False, counter=None) -> Multiset:
    out = content_similar(liked_resources(person, counter), counter)
    return _drop_liked(out, person) if exclude_liked else out


def collaborative_recommend_multiset(person: Vertex, exclude_liked: bool = False, counter=None) -> Multiset:
    out = liked_resources(cofavored_people(person, counter), counter)
    return _drop_liked(out, person) if exclude_liked else out


def content_recommend(person: Vertex, exclude_liked: bool = False, counter=None) -> list[tuple[Vertex, int]]:
    """Ranked f∘g: resources similar in features to those `person` likes."""
    return rank(content_recommend_multiset(person, exclude_liked, counter))


def collaborative_recommend(person: Vertex, exclude_liked: bool = False, counter=None) -> list[tuple[Vertex, int]]:
    """Ranked g∘f: resources liked by people who share `person`'s likes."""
    return rank(collaborative_recommend_multiset(person, exclude_liked, counter))
