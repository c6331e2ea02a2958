"""Weighted k-coverage: each (element, dimension) pair covers a subset of a universe."""

from __future__ import annotations

import json

import numpy as np

from ..core import Objective, PreconditionError


class CoverageObjective(Objective):
    """``f(x) = sum of w_u over universe items covered by any selected (e, x(e))``.

    ``sets[e][i-1]`` is the set of universe items covered when element ``e``
    joins dimension ``i``.  Sets are stored as python int bitmasks.
    """

    name = "coverage"
    claims_exact_ksubmodular = True

    def __init__(self, sets, weights):
        n = len(sets)
        k = len(sets[0]) if n else 0
        super().__init__(n, k)
        self.weights = [float(w) for w in weights]
        if any(w < 0 for w in self.weights):
            raise PreconditionError("coverage weights must be nonnegative")
        self.universe_size = len(self.weights)
        self.sets = [[frozenset(int(u) for u in s) for s in row] for row in sets]
        for row in self.sets:
            if len(row) != k:
                raise PreconditionError("every element needs one covered set per dimension")
            for s in row:
                if s and max(s) >= self.universe_size:
                    raise PreconditionError("covered item outside the universe")
        self._masks = [[0] + [sum(1 << u for u in s) for s in row] for row in self.sets]
        # per-byte partial sums make the weighted popcount cheap
        self._byte_tables = []
        for start in range(0, self.universe_size, 8):
            chunk = self.weights[start:start + 8]
            self._byte_tables.append(
                [sum(chunk[b] for b in range(len(chunk)) if (m >> b) & 1) for m in range(256)])

    def _value(self, labels):
        masks = self._masks
        covered = 0
        for e, v in enumerate(labels):
            if v:
                covered |= masks[e][v]
        total = 0.0
        for table in self._byte_tables:
            total += table[covered & 0xFF]
            covered >>= 8
        return total

    def restrict(self, k: int) -> "CoverageObjective":
        """The same instance using only dimensions ``1..k``."""
        return CoverageObjective([row[:k] for row in self.sets], self.weights)

    def to_dict(self) -> dict:
        return {"kind": "coverage", "weights": self.weights,
                "sets": [[sorted(s) for s in row] for row in self.sets]}

    @classmethod
    def from_dict(cls, d: dict) -> "CoverageObjective":
        return cls(d["sets"], d["weights"])

    def save(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.to_dict(), fh)

    @classmethod
    def load(cls, path) -> "CoverageObjective":
        with open(path, encoding="utf-8") as fh:
            return cls.from_dict(json.load(fh))


def random_coverage(n: int, k: int, universe_size: int = 12, density: float = 0.25,
                    seed=None, max_weight: int = 5) -> CoverageObjective:
    """Random instance with integer weights in ``1..max_weight``.

    Integer weights keep every value and marginal gain exactly representable,
    so gain comparisons never depend on summation order.
    """
    rng = np.random.default_rng(seed)
    weights = rng.integers(1, max_weight + 1, size=universe_size).astype(float)
    sets = []
    for _ in range(n):
        row = []
        for _ in range(k):
            members = np.flatnonzero(rng.random(universe_size) < density)
            if members.size == 0:
                members = rng.integers(0, universe_size, size=1)
            row.append(members.tolist())
        sets.append(row)
    return CoverageObjective(sets, weights)
