"""Simulated relational engine for the friends-of-a-name query.

Two tables, ``person(identifier, name)`` and ``friend(person_a, person_b)``,
with sorted arrays standing in for B-tree indices. Every index probe is
counted so the relational join can be compared against a graph traversal
on the same data.

The query runs as six micro-operations:

1. search ``person.name`` for the starting name
2. read that row's identifier
3. search ``friend.person_a`` for the identifier
4. read ``person_b`` of the k matching rows
5. search ``person.identifier`` once per friend
6. read the ``name`` of the k person rows
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .counters import OpCounter
from .errors import DuplicateName, MissingName, NameNotFound
from .graph import Graph, value_sort_key
from .index import counted_search
from .traversal import Multiset


@dataclass
class PersonTable:
    identifiers: list[int] = field(default_factory=list)
    names: list = field(default_factory=list)
    # secondary structures: sorted keys with row positions
    name_keys: list = field(default_factory=list)
    name_rows: list[int] = field(default_factory=list)
    id_keys: list[int] = field(default_factory=list)
    id_rows: list[int] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.identifiers)

    def rows(self) -> list[tuple[int, object]]:
        return list(zip(self.identifiers, self.names))


@dataclass
class FriendTable:
    person_a: list[int] = field(default_factory=list)
    person_b: list[int] = field(default_factory=list)
    # index over distinct person_a values; rows are stored grouped by person_a
    a_keys: list[int] = field(default_factory=list)
    a_ranges: list[tuple[int, int]] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.person_a)

    def rows(self) -> list[tuple[int, int]]:
        return list(zip(self.person_a, self.person_b))


def build_tables(people: list[tuple[int, object]], friends: list[tuple[int, int]]) -> tuple[PersonTable, FriendTable]:
    person = PersonTable(
        identifiers=[p[0] for p in people],
        names=[p[1] for p in people],
    )
    seen = {}
    for ident, name in people:
        sk = value_sort_key(name)
        if sk in seen:
            raise DuplicateName(f"name {name!r} appears on rows {seen[sk]} and {ident}")
        seen[sk] = ident
    by_name = sorted(range(len(people)), key=lambda r: value_sort_key(person.names[r]))
    person.name_keys = [value_sort_key(person.names[r]) for r in by_name]
    person.name_rows = by_name
    by_id = sorted(range(len(people)), key=lambda r: person.identifiers[r])
    person.id_keys = [person.identifiers[r] for r in by_id]
    person.id_rows = by_id

    ordered = sorted(friends, key=lambda f: f[0])
    friend = FriendTable(person_a=[f[0] for f in ordered], person_b=[f[1] for f in ordered])
    start = 0
    for i in range(1, len(ordered) + 1):
        if i == len(ordered) or ordered[i][0] != ordered[start][0]:
            friend.a_keys.append(ordered[start][0])
            friend.a_ranges.append((start, i))
            start = i
    return person, friend


def tables_from_graph(graph: Graph, label: str = "friend", key: str = "name") -> tuple[PersonTable, FriendTable]:
    """One person row per vertex, one friend row per `label` edge."""
    people = []
    for v in graph.iter_vertices():
        if key not in v.properties:
            raise MissingName(f"vertex {v.id} has no {key!r} property")
        people.append((v.id, v.properties[key]))
    friends = [(e.tail.id, e.head.id) for e in graph.iter_edges() if e.label == label]
    return build_tables(people, friends)


def friends_of_name(tables: tuple[PersonTable, FriendTable], name,
                    counter: OpCounter | None = None) -> tuple[Multiset, OpCounter]:
    person, friend = tables
    counter = counter if counter is not None else OpCounter()

    pos = counted_search(person.name_keys, value_sort_key(name), counter, step="1")
    if pos < 0:
        raise NameNotFound(f"no person named {name!r}")
    row = person.name_rows[pos]

    ident = person.identifiers[row]
    counter.touch(1, step="2")

    pos = counted_search(friend.a_keys, ident, counter, step="3")
    if pos < 0:
        return Multiset.values(), counter
    start, end = friend.a_ranges[pos]

    friend_ids = friend.person_b[start:end]
    counter.touch(len(friend_ids), step="4")

    rows = []
    for fid in friend_ids:
        p = counted_search(person.id_keys, fid, counter, step="5")
        rows.append(person.id_rows[p])

    names = [person.names[r] for r in rows]
    counter.touch(len(names), step="6")
    return Multiset.values(*names), counter
