"""Result type shared by all solvers."""

from __future__ import annotations

import math
from dataclasses import dataclass, field


@dataclass(frozen=True)
class DomSolution:
    """A vertex set, or the infeasibility mark when ``ids`` is ``None``.

    Solutions order by size, then by their sorted id sequence; infeasible
    solutions sort after every feasible one.
    """

    ids: frozenset | None
    reason: str | None = None
    notes: tuple = field(default=(), compare=False)

    @classmethod
    def infeasible(cls, reason: str, notes=()) -> "DomSolution":
        return cls(None, reason, tuple(notes))

    @classmethod
    def of(cls, ids, notes=()) -> "DomSolution":
        return cls(frozenset(ids), None, tuple(notes))

    @property
    def feasible(self) -> bool:
        return self.ids is not None

    @property
    def size(self):
        return math.inf if self.ids is None else len(self.ids)

    def sorted_ids(self) -> list[str]:
        return [] if self.ids is None else sorted(self.ids)

    def _order(self):
        return (self.ids is None, self.size if self.ids is not None else 0, self.sorted_ids())

    def __lt__(self, other: "DomSolution") -> bool:
        return self._order() < other._order()

    def __le__(self, other: "DomSolution") -> bool:
        return self._order() <= other._order()

    def __len__(self):
        if self.ids is None:
            raise ValueError("an infeasible solution has no finite size")
        return len(self.ids)

    def __repr__(self):
        if self.ids is None:
            return f"DomSolution(infeasible: {self.reason})"
        return f"DomSolution({self.sorted_ids()})"
