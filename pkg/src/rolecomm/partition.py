"""Hard partitions of a node set."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


def canonical_labels(assignment) -> np.ndarray:
    """Relabel communities 0, 1, ... in order of first appearance."""
    assignment = np.asarray(assignment, dtype=np.int64)
    _, first, inv = np.unique(assignment, return_index=True, return_inverse=True)
    rank = np.empty(first.size, dtype=np.int64)
    rank[np.argsort(first, kind="stable")] = np.arange(first.size)
    return rank[inv.reshape(-1)]


@dataclass(frozen=True, eq=False)
class Partition:
    """Community assignment with labels ``0..c-1``, each used at least once."""

    assignment: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.assignment, dtype=np.int64).reshape(-1)
        if a.size and (a.min() < 0 or np.unique(a).size != a.max() + 1):
            raise ValueError("community labels must cover 0..c-1 without gaps")
        a.setflags(write=False)
        object.__setattr__(self, "assignment", a)

    @classmethod
    def from_labels(cls, labels) -> "Partition":
        return cls(canonical_labels(labels))

    @property
    def n(self) -> int:
        return int(self.assignment.size)

    @property
    def c(self) -> int:
        return int(self.assignment.max()) + 1 if self.assignment.size else 0

    def indicator(self) -> np.ndarray:
        h = np.zeros((self.n, self.c))
        h[np.arange(self.n), self.assignment] = 1.0
        return h

    def __eq__(self, other):
        if not isinstance(other, Partition):
            return NotImplemented
        return np.array_equal(self.assignment, other.assignment)

    def __hash__(self):
        return hash(self.assignment.tobytes())

    def __repr__(self):
        return f"Partition(c={self.c}, assignment={self.assignment.tolist()})"
