"""Traversal algebra over element multisets.

Frontiers are multisets: a step maps each occurrence of an element to zero or
more occurrences of adjacent elements, and repeated arrivals accumulate
multiplicity. Steps are composed into a `Traversal`, applied first to last.
"""

from __future__ import annotations

import enum
import operator
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator

from .counters import OpCounter
from .errors import KindMismatch, TypeMismatch
from .graph import Edge, Element, Vertex, check_property, is_numeric, value_sort_key, values_equal


class Kind(enum.Enum):
    VERTEX = "vertex"
    EDGE = "edge"
    VALUE = "value"


ELEMENT_KINDS = frozenset({Kind.VERTEX, Kind.EDGE})
ALL_KINDS = frozenset(Kind)


def _value_key(value):
    # keeps True and 1 apart inside a Counter
    return ("b", value) if isinstance(value, bool) else ("x", value)


class Multiset:
    """Homogeneous multiset of vertices, edges, or property values."""

    __slots__ = ("kind", "_counts")

    def __init__(self, kind: Kind, items: Iterable = (), counts: dict | None = None):
        self.kind = kind
        self._counts: Counter = Counter()
        if counts:
            for item, n in counts.items():
                if n < 0:
                    raise ValueError("multiplicities must be non-negative")
                if n:
                    self._add(item, n)
        for item in items:
            self._add(item, 1)

    def _add(self, item, n: int) -> None:
        if self.kind is Kind.VALUE:
            self._counts[_value_key(item)] += n
            return
        expected = Vertex if self.kind is Kind.VERTEX else Edge
        if not isinstance(item, expected):
            raise KindMismatch(f"{item!r} is not a {self.kind.value}")
        self._counts[item] += n

    @classmethod
    def of(cls, kind: Kind, *items) -> Multiset:
        return cls(kind, items)

    @classmethod
    def vertices(cls, *items: Vertex) -> Multiset:
        return cls(Kind.VERTEX, items)

    @classmethod
    def edges(cls, *items: Edge) -> Multiset:
        return cls(Kind.EDGE, items)

    @classmethod
    def values(cls, *items) -> Multiset:
        return cls(Kind.VALUE, items)

    @classmethod
    def _raw(cls, kind: Kind, counts: Counter) -> Multiset:
        ms = cls.__new__(cls)
        ms.kind = kind
        ms._counts = counts
        return ms

    def items(self) -> Iterator[tuple[object, int]]:
        if self.kind is Kind.VALUE:
            return ((k[1], n) for k, n in self._counts.items())
        return iter(self._counts.items())

    def elements(self) -> Iterator:
        """Every occurrence, repeated by multiplicity."""
        for item, n in self.items():
            for _ in range(n):
                yield item

    def support(self) -> set:
        return {item for item, _ in self.items()}

    def count(self, item) -> int:
        if self.kind is Kind.VALUE:
            return self._counts.get(_value_key(item), 0)
        return self._counts.get(item, 0)

    def distinct(self) -> int:
        return len(self._counts)

    def __len__(self) -> int:
        return sum(self._counts.values())

    def __bool__(self) -> bool:
        return bool(self._counts)

    def __iter__(self) -> Iterator:
        return self.elements()

    def __contains__(self, item) -> bool:
        return self.count(item) > 0

    def __eq__(self, other) -> bool:
        if not isinstance(other, Multiset):
            return NotImplemented
        return self.kind is other.kind and self._counts == other._counts

    def __hash__(self):
        raise TypeError("Multiset is unhashable")

    def _check_same(self, other: Multiset) -> None:
        if self.kind is not other.kind:
            raise KindMismatch(f"cannot combine {self.kind.value} and {other.kind.value} multisets")

    def __add__(self, other: Multiset) -> Multiset:
        self._check_same(other)
        return Multiset._raw(self.kind, self._counts + other._counts)

    def __sub__(self, other: Multiset) -> Multiset:
        self._check_same(other)
        return Multiset._raw(self.kind, self._counts - other._counts)

    def scaled(self, n: int) -> Multiset:
        """Every multiplicity multiplied by `n`."""
        if n < 0:
            raise ValueError("scale must be non-negative")
        return Multiset._raw(self.kind, Counter({k: c * n for k, c in self._counts.items()} if n else {}))

    def where(self, predicate: Callable[[object], bool]) -> Multiset:
        return Multiset(self.kind, counts={item: n for item, n in self.items() if predicate(item)})

    def ids(self) -> Counter:
        """Multiplicities keyed by element id (or by value for value multisets)."""
        if self.kind is Kind.VALUE:
            return Counter(dict(self.items()))
        return Counter({el.id: n for el, n in self._counts.items()})

    def __repr__(self) -> str:
        body = ", ".join(f"{_label(item)}×{n}" if n > 1 else _label(item) for item, n in rank(self))
        return f"Multiset[{self.kind.value}]{{{body}}}"


def _label(item) -> str:
    if isinstance(item, Element):
        return f"{item.kind}{item.id}"
    return repr(item)


def sort_key(item):
    if isinstance(item, Element):
        return (item.id,)
    return value_sort_key(item)


def rank(ms: Multiset) -> list[tuple[object, int]]:
    """Descending multiplicity, ties broken by ascending id (or value order)."""
    return sorted(ms.items(), key=lambda p: (-p[1], sort_key(p[0])))


def dedupe(ms: Multiset) -> Multiset:
    return Multiset._raw(ms.kind, Counter(dict.fromkeys(ms._counts, 1)))


def union(kind: Kind, parts: Iterable[Multiset]) -> Multiset:
    total: Counter = Counter()
    for part in parts:
        if part.kind is not kind:
            raise KindMismatch(f"expected {kind.value} multiset, got {part.kind.value}")
        total.update(part._counts)
    return Multiset._raw(kind, total)


# ---------------------------------------------------------------- steps


def _require(ms: Multiset, kinds: frozenset, step: str) -> None:
    if ms.kind not in kinds:
        names = "/".join(sorted(k.value for k in kinds))
        raise KindMismatch(f"{step} expects a {names} frontier, got {ms.kind.value}")


class Step:
    accepts: frozenset = ELEMENT_KINDS
    name = "step"

    def output(self, kind: Kind) -> Kind:
        return kind

    def apply(self, ms: Multiset, counter: OpCounter | None = None) -> Multiset:
        raise NotImplementedError

    def __call__(self, ms: Multiset, counter: OpCounter | None = None) -> Multiset:
        _require(ms, self.accepts, self.name)
        return self.apply(ms, counter)


def _expand(ms: Multiset, adjacent: Callable[[Element], Iterable], counter: OpCounter | None) -> Counter:
    out: Counter = Counter()
    for el, n in ms._counts.items():
        adj = adjacent(el)
        if counter is not None:
            counter.touch(1 + len(adj))
        for nxt in adj:
            out[nxt] += n
    return out


@dataclass(frozen=True)
class EOut(Step):
    accepts = frozenset({Kind.VERTEX})
    name = "outE"

    def output(self, kind):
        return Kind.EDGE

    def apply(self, ms, counter=None):
        return Multiset._raw(Kind.EDGE, _expand(ms, lambda v: v.out_edges, counter))


@dataclass(frozen=True)
class EIn(Step):
    accepts = frozenset({Kind.VERTEX})
    name = "inE"

    def output(self, kind):
        return Kind.EDGE

    def apply(self, ms, counter=None):
        return Multiset._raw(Kind.EDGE, _expand(ms, lambda v: v.in_edges, counter))


@dataclass(frozen=True)
class VOut(Step):
    """Tail vertex of each edge."""

    accepts = frozenset({Kind.EDGE})
    name = "outV"

    def output(self, kind):
        return Kind.VERTEX

    def apply(self, ms, counter=None):
        out: Counter = Counter()
        for e, n in ms._counts.items():
            out[e.tail] += n
        if counter is not None:
            counter.touch(len(ms._counts))
        return Multiset._raw(Kind.VERTEX, out)


@dataclass(frozen=True)
class VIn(Step):
    """Head vertex of each edge."""

    accepts = frozenset({Kind.EDGE})
    name = "inV"

    def output(self, kind):
        return Kind.VERTEX

    def apply(self, ms, counter=None):
        out: Counter = Counter()
        for e, n in ms._counts.items():
            out[e.head] += n
        if counter is not None:
            counter.touch(len(ms._counts))
        return Multiset._raw(Kind.VERTEX, out)


@dataclass(frozen=True)
class Props(Step):
    key: str
    name = "props"

    def __post_init__(self):
        check_property(self.key, "")

    def output(self, kind):
        return Kind.VALUE

    def apply(self, ms, counter=None):
        out: Counter = Counter()
        for el, n in ms._counts.items():
            value = el.properties.get(self.key)
            if value is not None:
                out[_value_key(value)] += n
        if counter is not None:
            counter.touch(len(ms._counts))
        return Multiset._raw(Kind.VALUE, out)


@dataclass(frozen=True)
class LabelFilter(Step):
    label: str
    allow: bool = True
    accepts = frozenset({Kind.EDGE})
    name = "labelFilter"

    def __post_init__(self):
        if not isinstance(self.label, str) or not self.label:
            raise ValueError("label must be a nonempty string")

    def apply(self, ms, counter=None):
        keep = {e: n for e, n in ms._counts.items() if (e.label == self.label) == self.allow}
        if counter is not None:
            counter.touch(len(ms._counts))
            counter.compare(len(ms._counts), key="@label")
        return Multiset._raw(Kind.EDGE, Counter(keep))


_COMPARATORS = {
    "=": operator.eq,
    "!=": operator.ne,
    "<=": operator.le,
    "<": operator.lt,
    ">=": operator.ge,
    ">": operator.gt,
}
_ALIASES = {"==": "=", "≠": "!=", "≤": "<=", "≥": ">="}
INEQUALITIES = frozenset({"<=", "<", ">=", ">"})


def normalize_comparator(op: str) -> str:
    op = _ALIASES.get(op, op)
    if op not in _COMPARATORS:
        raise ValueError(f"unknown comparator {op!r}")
    return op


@dataclass(frozen=True)
class PropFilter(Step):
    """Keep (allow) or drop (deny) elements whose `key` satisfies `op value`.

    Under allow, elements missing the key are dropped; under deny they are
    kept, so the two polarities always partition the input.
    """

    key: str
    op: str = "="
    value: object = None
    allow: bool = True
    name = "propFilter"
    _test: Callable = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        op = normalize_comparator(self.op)
        object.__setattr__(self, "op", op)
        check_property(self.key, self.value)
        if op in INEQUALITIES and not is_numeric(self.value):
            raise TypeMismatch(f"{op} needs a numeric operand, got {self.value!r}")
        object.__setattr__(self, "_test", self._make_test(op, self.value))

    @staticmethod
    def _make_test(op, target):
        if op == "=":
            return lambda v: values_equal(v, target)
        if op == "!=":
            return lambda v: not values_equal(v, target)
        fn = _COMPARATORS[op]
        # a non-numeric stored value never satisfies an inequality
        return lambda v: is_numeric(v) and fn(v, target)

    def matches(self, element: Element, counter: OpCounter | None = None) -> bool:
        value = element.properties.get(self.key)
        if value is None:
            return False
        if counter is not None:
            counter.compare(key=self.key, element=element)
        return self._test(value)

    def apply(self, ms, counter=None):
        keep = {el: n for el, n in ms._counts.items() if self.matches(el, counter) == self.allow}
        if counter is not None:
            counter.touch(len(ms._counts))
        return Multiset._raw(ms.kind, Counter(keep))


@dataclass(frozen=True)
class ElementFilter(Step):
    element: Element
    allow: bool = True
    name = "elementFilter"

    def apply(self, ms, counter=None):
        target = self.element
        keep = {el: n for el, n in ms._counts.items() if (el is target) == self.allow}
        if counter is not None:
            counter.touch(len(ms._counts))
        return Multiset._raw(ms.kind, Counter(keep))


# ---------------------------------------------------------------- composition


def _simulate(steps: tuple[Step, ...], kind: Kind) -> Kind | None:
    for step in steps:
        if kind not in step.accepts:
            return None
        kind = step.output(kind)
    return kind


@dataclass(frozen=True)
class Traversal:
    """An immutable, reusable pipeline of steps."""

    steps: tuple[Step, ...] = ()
    input_kinds: frozenset = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(self.steps))
        ok = frozenset(k for k in Kind if _simulate(self.steps, k) is not None)
        if not ok:
            raise KindMismatch(f"steps {[s.name for s in self.steps]} cannot be chained")
        object.__setattr__(self, "input_kinds", ok)

    def output_kind(self, kind: Kind) -> Kind:
        out = _simulate(self.steps, kind)
        if out is None:
            raise KindMismatch(f"traversal does not accept a {kind.value} frontier")
        return out

    def then(self, *parts) -> Traversal:
        return compose(self, *parts)

    def __call__(self, start: Multiset, counter: OpCounter | None = None) -> Multiset:
        return evaluate(self, start, counter)

    def __len__(self) -> int:
        return len(self.steps)


def compose(*parts: Step | Traversal | Iterable[Step]) -> Traversal:
    """Chain steps and traversals; parts run left to right."""
    steps: list[Step] = []
    for part in parts:
        if isinstance(part, Traversal):
            steps.extend(part.steps)
        elif isinstance(part, Step):
            steps.append(part)
        else:
            steps.extend(compose(*part).steps)
    return Traversal(tuple(steps))


IDENTITY = Traversal(())


def evaluate(t: Traversal, start: Multiset, counter: OpCounter | None = None) -> Multiset:
    if start.kind not in t.input_kinds:
        raise KindMismatch(f"traversal does not accept a {start.kind.value} frontier")
    ms = start
    for step in t.steps:
        ms = step.apply(ms, counter)
    return ms


def iterate(t: Traversal, start: Multiset, n: int, counter: OpCounter | None = None) -> Multiset:
    if n < 0:
        raise ValueError("iteration count must be non-negative")
    if Kind.VERTEX not in t.input_kinds or t.output_kind(Kind.VERTEX) is not Kind.VERTEX:
        raise KindMismatch("iterate needs a vertex-to-vertex traversal")
    _require(start, frozenset({Kind.VERTEX}), "iterate")
    ms = start
    for _ in range(n):
        ms = evaluate(t, ms, counter)
    return ms


# Functional spellings of the single steps.

def e_out(ms, counter=None):
    return EOut()(ms, counter)


def e_in(ms, counter=None):
    return EIn()(ms, counter)


def v_out(ms, counter=None):
    return VOut()(ms, counter)


def v_in(ms, counter=None):
    return VIn()(ms, counter)


def props(ms, key, counter=None):
    return Props(key)(ms, counter)


def filter_label(ms, label, allow=True, counter=None):
    return LabelFilter(label, allow)(ms, counter)


def filter_property(ms, key, op="=", value=None, allow=True, counter=None):
    return PropFilter(key, op, value, allow)(ms, counter)


def filter_element(ms, element, allow=True, counter=None):
    return ElementFilter(element, allow)(ms, counter)


def friend_names(label: str = "friend", key: str = "name") -> Traversal:
    """outE | labelFilter(+,label) | inV | props(key)."""
    return compose(EOut(), LabelFilter(label), VIn(), Props(key))
