"""Ground sets, assignments, size constraints and the objective interface.

An assignment over ``n`` elements and ``k`` dimensions is stored as a tuple of
labels in ``{0, 1, ..., k}``; label 0 means "not selected", label ``i`` means
the element belongs to the ``i``-th subset.  Every objective in the package is
a callable over such label tuples.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

#: Relative slack used by every bound / inequality comparison in the package.
REL_SLACK = 1e-9


class KSubError(Exception):
    """Base class for all package errors."""


class PreconditionError(KSubError, ValueError):
    pass


class InfeasibleConstraintError(KSubError, ValueError):
    pass


class ConfigError(KSubError, ValueError):
    pass


class BudgetExceededError(KSubError, RuntimeError):
    """Raised when an exhaustive enumeration would be larger than allowed."""


def slack(*values: float) -> float:
    """Tolerance for comparing quantities built from ``values``."""
    scale = max((abs(v) for v in values), default=0.0)
    return REL_SLACK * max(scale, 1e-6)


@dataclass(frozen=True)
class GroundSet:
    n: int
    k: int

    def __post_init__(self):
        if int(self.n) < 1:
            raise PreconditionError(f"ground set needs n >= 1, got {self.n}")
        if int(self.k) < 1:
            raise PreconditionError(f"ground set needs k >= 1, got {self.k}")

    def empty(self) -> "Assignment":
        return Assignment((0,) * self.n, self.k)


@dataclass(frozen=True)
class Assignment:
    """A vector in ``{0..k}^n`` encoding ``k`` disjoint subsets."""

    labels: tuple
    k: int

    def __post_init__(self):
        labels = tuple(int(v) for v in self.labels)
        bad = [v for v in labels if v < 0 or v > self.k]
        if bad:
            raise PreconditionError(f"labels must lie in [0, {self.k}], got {bad[0]}")
        object.__setattr__(self, "labels", labels)

    @classmethod
    def empty(cls, n: int, k: int) -> "Assignment":
        return cls((0,) * n, k)

    @classmethod
    def from_subsets(cls, n: int, subsets: Sequence[Iterable[int]]) -> "Assignment":
        """Build from ``[X_1, ..., X_k]``; the subsets must be disjoint."""
        labels = [0] * n
        for i, sub in enumerate(subsets, start=1):
            for e in sub:
                if labels[e]:
                    raise PreconditionError(f"element {e} appears in two subsets")
                labels[e] = i
        return cls(tuple(labels), len(subsets))

    @property
    def n(self) -> int:
        return len(self.labels)

    def support(self) -> list[int]:
        return [e for e, v in enumerate(self.labels) if v]

    def support_of(self, i: int) -> list[int]:
        return [e for e, v in enumerate(self.labels) if v == i]

    def size(self) -> int:
        return sum(1 for v in self.labels if v)

    def counts(self) -> list[int]:
        """``|supp_i(x)|`` for ``i = 1..k``."""
        out = [0] * self.k
        for v in self.labels:
            if v:
                out[v - 1] += 1
        return out

    def with_label(self, e: int, i: int) -> "Assignment":
        labels = list(self.labels)
        labels[e] = i
        return Assignment(tuple(labels), self.k)

    def precedes(self, other: "Assignment") -> bool:
        """Partial order ``x <= y``: every ``X_i`` is a subset of ``Y_i``."""
        return all(a == 0 or a == b for a, b in zip(self.labels, other.labels))

    def __iter__(self):
        return iter(self.labels)

    def __len__(self):
        return len(self.labels)


def labels_of(x) -> tuple:
    if isinstance(x, Assignment):
        return x.labels
    if isinstance(x, tuple):
        return x
    return tuple(int(v) for v in x)


def add_label(labels: tuple, e: int, i: int) -> tuple:
    return labels[:e] + (i,) + labels[e + 1:]


# --------------------------------------------------------------------------
# constraints


class Constraint:
    """Feasibility predicate over assignments.

    Every constraint is stored as a partition of the dimensions into groups
    with one cap per group: total size is a single group holding all
    dimensions, individual size is ``k`` singleton groups.
    """

    kind = "abstract"

    def __init__(self, k: int, groups: Sequence[Sequence[int]], caps: Sequence[int]):
        self.k = int(k)
        self.groups = tuple(tuple(int(d) for d in g) for g in groups)
        self.caps = tuple(int(c) for c in caps)
        if len(self.groups) != len(self.caps):
            raise ConfigError("need exactly one cap per group")
        seen = sorted(d for g in self.groups for d in g)
        if seen != list(range(1, self.k + 1)):
            raise ConfigError(f"groups {self.groups} do not partition dimensions 1..{self.k}")
        if any(c < 1 for c in self.caps):
            raise ConfigError(f"caps must be positive, got {self.caps}")
        self.group_of = [0] * (self.k + 1)
        for gi, g in enumerate(self.groups):
            for d in g:
                self.group_of[d] = gi

    @property
    def budget(self) -> int:
        """Number of greedy iterations needed to saturate the constraint."""
        return sum(self.caps)

    def check(self, gs: GroundSet) -> None:
        if gs.k != self.k:
            raise ConfigError(f"constraint built for k={self.k}, ground set has k={gs.k}")
        if self.budget > gs.n:
            raise InfeasibleConstraintError(
                f"{self.kind} budget {self.budget} exceeds ground set size {gs.n}")

    def group_loads(self, labels: Sequence[int]) -> list[int]:
        loads = [0] * len(self.groups)
        for v in labels:
            if v:
                loads[self.group_of[v]] += 1
        return loads

    def is_feasible(self, x) -> bool:
        loads = self.group_loads(labels_of(x))
        return all(load <= cap for load, cap in zip(loads, self.caps))

    def is_saturated(self, x) -> bool:
        loads = self.group_loads(labels_of(x))
        return all(load == cap for load, cap in zip(loads, self.caps))

    def __eq__(self, other):
        return (isinstance(other, Constraint) and self.k == other.k
                and self.groups == other.groups and self.caps == other.caps)

    def __hash__(self):
        return hash((self.k, self.groups, self.caps))


class TotalSize(Constraint):
    kind = "TS"

    def __init__(self, k: int, B: int):
        super().__init__(k, [range(1, k + 1)], [B])
        self.B = int(B)

    def __repr__(self):
        return f"TotalSize(k={self.k}, B={self.B})"


class IndividualSize(Constraint):
    kind = "IS"

    def __init__(self, caps: Sequence[int]):
        caps = [int(c) for c in caps]
        super().__init__(len(caps), [[i] for i in range(1, len(caps) + 1)], caps)

    def __repr__(self):
        return f"IndividualSize(caps={list(self.caps)})"


class GroupSize(Constraint):
    kind = "Group"

    def __repr__(self):
        return f"GroupSize(groups={[list(g) for g in self.groups]}, caps={list(self.caps)})"


def is_feasible(c: Constraint, x) -> bool:
    return c.is_feasible(x)


# --------------------------------------------------------------------------
# objectives


class Objective:
    """Deterministic set function over ``(k+1)^V`` with an evaluation counter.

    Subclasses implement :meth:`_value` on label tuples.  Calling the object
    accepts an :class:`Assignment`, a tuple, or any integer sequence.
    """

    name = "objective"
    claims_exact_ksubmodular = False

    def __init__(self, n: int, k: int):
        self.n = int(n)
        self.k = int(k)
        self._evals = 0
        self._lock = threading.Lock()

    @property
    def ground_set(self) -> GroundSet:
        return GroundSet(self.n, self.k)

    @property
    def eval_count(self) -> int:
        return self._evals

    def reset_count(self) -> None:
        with self._lock:
            self._evals = 0

    def __call__(self, x) -> float:
        labels = labels_of(x)
        if len(labels) != self.n:
            raise PreconditionError(f"assignment has length {len(labels)}, expected {self.n}")
        with self._lock:
            self._evals += 1
        return self._value(labels)

    def _value(self, labels: tuple) -> float:
        raise NotImplementedError

    def __repr__(self):
        return f"<{type(self).__name__} {self.name} n={self.n} k={self.k}>"


class FunctionObjective(Objective):
    """Wraps a plain python function of the label tuple."""

    def __init__(self, fn: Callable[[tuple], float], n: int, k: int, name: str = "function",
                 exact: bool = False):
        super().__init__(n, k)
        self._fn = fn
        self.name = name
        self.claims_exact_ksubmodular = exact

    def _value(self, labels):
        return float(self._fn(labels))


class ModularObjective(Objective):
    """``f(x) = sum_e w[e, x(e)]``; always k-submodular (and monotone if w >= 0)."""

    name = "modular"
    claims_exact_ksubmodular = True

    def __init__(self, weights):
        w = np.asarray(weights, dtype=float)
        if w.ndim == 1:
            w = w[:, None]
        super().__init__(w.shape[0], w.shape[1])
        self.weights = w
        # column 0 is the "unselected" label
        self._table = np.hstack([np.zeros((w.shape[0], 1)), w]).tolist()

    def _value(self, labels):
        t = self._table
        return float(sum(t[e][v] for e, v in enumerate(labels) if v))


def marginal_gain(obj: Objective, x, e: int, i: int) -> float:
    """``obj(x with e assigned to i) - obj(x)``; ``e`` must be unassigned."""
    labels = labels_of(x)
    if not 0 <= e < len(labels):
        raise PreconditionError(f"element {e} outside ground set")
    if labels[e] != 0:
        raise PreconditionError(f"element {e} is already assigned to dimension {labels[e]}")
    if not 1 <= i <= obj.k:
        raise PreconditionError(f"dimension {i} outside 1..{obj.k}")
    return obj(add_label(labels, e, i)) - obj(labels)
