"""Operation counters shared by the graph, traversal, relational and spatial code."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

BOUNDING_BOX_KEYS = ("bl_x", "bl_y", "tr_x", "tr_y")


@dataclass
class OpCounter:
    """Tally of comparisons and elements touched during one query.

    A counter is owned by a single query; concurrent queries must each
    pass their own instance.
    """

    comparisons: int = 0
    touched: int = 0
    by_key: Counter = field(default_factory=Counter)
    by_element: Counter = field(default_factory=Counter)
    by_element_key: Counter = field(default_factory=Counter)
    by_step: Counter = field(default_factory=Counter)
    touched_by_step: Counter = field(default_factory=Counter)

    def touch(self, n: int = 1, *, step: str | None = None) -> None:
        self.touched += n
        if step is not None:
            self.touched_by_step[step] += n

    def compare(self, n: int = 1, *, key: str | None = None, element=None, step: str | None = None) -> None:
        self.comparisons += n
        if key is not None:
            self.by_key[key] += n
        if element is not None:
            self.by_element[element.ref] += n
            if key is not None:
                self.by_element_key[element.ref, key] += n
        if step is not None:
            self.by_step[step] += n

    @property
    def rows_touched(self) -> int:
        return self.touched

    def bounding_box_comparisons(self) -> int:
        return sum(self.by_key[k] for k in BOUNDING_BOX_KEYS)

    def comparisons_on(self, element, keys=None) -> int:
        """Comparisons charged to `element`, optionally only those on `keys`."""
        if keys is None:
            return self.by_element[element.ref]
        return sum(self.by_element_key[element.ref, k] for k in keys)

    def bounding_box_comparisons_on(self, element) -> int:
        return self.comparisons_on(element, BOUNDING_BOX_KEYS)
