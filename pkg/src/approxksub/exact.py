"""Exhaustive ground truth: brute-force maximization and property verifiers.

Verifiers tabulate the objective on every point of ``(k+1)^V`` once and then
compare marginal gains with vectorized numpy operations.  States are indexed
by their label array read as a base-``(k+1)`` number with element 0 as the
most significant digit, so numeric order equals lexicographic order.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .core import (
    REL_SLACK,
    Assignment,
    BudgetExceededError,
    Constraint,
    GroundSet,
    Objective,
    PreconditionError,
)

DEFAULT_MAX_N = 12
DEFAULT_MAX_K = 4


@dataclass(frozen=True)
class Limits:
    max_n: int = DEFAULT_MAX_N
    max_k: int = DEFAULT_MAX_K

    def check(self, gs: GroundSet) -> None:
        if gs.n > self.max_n or gs.k > self.max_k:
            raise BudgetExceededError(
                f"exhaustive enumeration limited to n <= {self.max_n}, k <= {self.max_k}; "
                f"got n={gs.n}, k={gs.k}")


DEFAULT_LIMITS = Limits()


@dataclass
class Witness:
    """A concrete violation; ``values`` maps names to the evaluated numbers."""

    x: Assignment
    y: Optional[Assignment] = None
    element: Optional[int] = None
    dimension: Optional[int] = None
    other_dimension: Optional[int] = None
    values: Optional[dict] = None

    def describe(self) -> str:
        parts = [f"x={list(self.x.labels)}"]
        if self.y is not None:
            parts.append(f"y={list(self.y.labels)}")
        if self.element is not None:
            parts.append(f"u={self.element}")
        if self.dimension is not None:
            parts.append(f"i={self.dimension}")
        if self.other_dimension is not None:
            parts.append(f"j={self.other_dimension}")
        if self.values:
            parts.append(" ".join(f"{k}={v:.9g}" for k, v in self.values.items()))
        return " ".join(parts)


@dataclass
class VerifierReport:
    property: str
    holds: bool
    witness: Optional[Witness] = None
    epsilon: Optional[float] = None
    violations: Optional[list] = None  # filled only when collect_all=True

    def __bool__(self):
        return self.holds

    def line(self) -> str:
        name = self.property if self.epsilon is None else f"{self.property}(eps={self.epsilon:g})"
        status = "PASS" if self.holds else "FAIL"
        tail = "" if self.witness is None else " witness: " + self.witness.describe()
        return f"{name}: {status}{tail}"


# --------------------------------------------------------------------------
# state tables


class StateTable:
    """All ``(k+1)^n`` values of an objective, indexed by lexicographic code."""

    def __init__(self, obj: Objective, gs: GroundSet, limits: Limits = DEFAULT_LIMITS):
        limits.check(gs)
        self.n, self.k = gs.n, gs.k
        self.base = gs.k + 1
        self.size = self.base ** self.n
        self.values = np.fromiter(
            (obj(labels) for labels in itertools.product(range(self.base), repeat=self.n)),
            dtype=float, count=self.size)
        codes = np.arange(self.size)
        # digits[e] = label of element e in every state
        self.weights = [self.base ** (self.n - 1 - e) for e in range(self.n)]
        self.digits = [(codes // w) % self.base for w in self.weights]

    def assignment(self, code: int) -> Assignment:
        return Assignment(tuple(int(d[code]) for d in self.digits), self.k)

    def free(self, e: int) -> np.ndarray:
        """Codes of states where element ``e`` is unassigned."""
        return np.flatnonzero(self.digits[e] == 0)

    def gains(self, e: int, i: int, codes: np.ndarray) -> np.ndarray:
        return self.values[codes + i * self.weights[e]] - self.values[codes]


def _tol(*arrays):
    scale = np.max(np.abs(np.vstack(arrays)), axis=0)
    return REL_SLACK * np.maximum(scale, 1e-6)


def _first(candidates):
    """Lexicographically smallest witness key among (key, witness) pairs."""
    return min(candidates, key=lambda kv: kv[0])[1] if candidates else None


# --------------------------------------------------------------------------
# brute force


def enumerate_feasible(gs: GroundSet, c: Constraint):
    """Yield every feasible label tuple (in no particular order)."""
    budget = c.budget
    for size in range(0, min(budget, gs.n) + 1):
        for support in itertools.combinations(range(gs.n), size):
            for dims in itertools.product(range(1, gs.k + 1), repeat=size):
                labels = [0] * gs.n
                for e, d in zip(support, dims):
                    labels[e] = d
                labels = tuple(labels)
                if c.is_feasible(labels):
                    yield labels


def brute_force_max(obj: Objective, gs: GroundSet, c: Constraint,
                    limits: Limits = DEFAULT_LIMITS) -> tuple[Assignment, float]:
    """Feasible maximizer (ties: lexicographically smallest labels) and its value."""
    limits.check(gs)
    c.check(gs)
    best_val, best = -math.inf, None
    for labels in enumerate_feasible(gs, c):
        v = obj(labels)
        if v > best_val or (v == best_val and labels < best):
            best_val, best = v, labels
    return Assignment(best, gs.k), float(best_val)


# --------------------------------------------------------------------------
# property verifiers


def verify_monotone(obj: Objective, gs: GroundSet, limits: Limits = DEFAULT_LIMITS,
                    table: StateTable | None = None) -> VerifierReport:
    """Every single-element extension has nonnegative gain."""
    t = table or StateTable(obj, gs, limits)
    found = []
    for e in range(t.n):
        codes = t.free(e)
        for i in range(1, t.k + 1):
            g = t.gains(e, i, codes)
            bad = np.flatnonzero(g < -_tol(t.values[codes], t.values[codes + i * t.weights[e]]))
            if bad.size:
                c = int(codes[bad[0]])
                y = c + i * t.weights[e]
                found.append(((c, e, i), Witness(
                    t.assignment(c), t.assignment(y), e, i,
                    values={"f(x)": t.values[c], "f(x+ui)": t.values[y]})))
    w = _first(found)
    return VerifierReport("monotone", w is None, w)


def verify_k_submodular(obj: Objective, gs: GroundSet, limits: Limits = DEFAULT_LIMITS,
                        table: StateTable | None = None,
                        collect_all: bool = False,
                        parts: tuple = ("orthant", "pairwise")) -> VerifierReport:
    """Orthant submodularity (a) and pairwise monotonicity (b).

    ``parts`` restricts the check to one of the two properties.

    Diminishing returns is checked on covering pairs ``y = x + (v, j)``;
    comparable pairs further apart follow by chaining single steps.
    """
    t = table or StateTable(obj, gs, limits)
    n, k, W, V = t.n, t.k, t.weights, t.values
    found = []
    for u in range(n):
        free_u = t.digits[u] == 0
        for v in range(n):
            if v == u or "orthant" not in parts:
                continue
            codes = np.flatnonzero(free_u & (t.digits[v] == 0))
            for i in range(1, k + 1):
                gx = t.gains(u, i, codes)
                for j in range(1, k + 1):
                    ycodes = codes + j * W[v]
                    gy = t.gains(u, i, ycodes)
                    tol = _tol(V[codes], V[codes + i * W[u]], V[ycodes], V[ycodes + i * W[u]])
                    bad = np.flatnonzero(gx < gy - tol)
                    for b in (bad if collect_all else bad[:1]):
                        c, yc = int(codes[b]), int(ycodes[b])
                        found.append(((0, c, yc, u, i), Witness(
                            t.assignment(c), t.assignment(yc), u, i,
                            values={"gain_at_x": float(gx[b]), "gain_at_y": float(gy[b])})))
        codes = np.flatnonzero(free_u)
        for i in range(1, k + 1 if "pairwise" in parts else 1):
            gi = t.gains(u, i, codes)
            for j in range(i + 1, k + 1):
                gj = t.gains(u, j, codes)
                tol = _tol(V[codes], V[codes + i * W[u]], V[codes + j * W[u]])
                bad = np.flatnonzero(gi + gj < -tol)
                for b in (bad if collect_all else bad[:1]):
                    c = int(codes[b])
                    found.append(((1, c, 0, u, i), Witness(
                        t.assignment(c), None, u, i, other_dimension=j,
                        values={"gain_i": float(gi[b]), "gain_j": float(gj[b])})))
    found.sort(key=lambda kv: kv[0])
    w = found[0][1] if found else None
    name = "k_submodular" if len(parts) == 2 else {"orthant": "orthant_submodular",
                                                  "pairwise": "pairwise_monotone"}[parts[0]]
    return VerifierReport(name, w is None, w,
                          violations=[w for _, w in found] if collect_all else None)


def verify_orthant_submodular(obj, gs, limits: Limits = DEFAULT_LIMITS, table=None) -> VerifierReport:
    return verify_k_submodular(obj, gs, limits, table, parts=("orthant",))


def verify_pairwise_monotone(obj, gs, limits: Limits = DEFAULT_LIMITS, table=None) -> VerifierReport:
    return verify_k_submodular(obj, gs, limits, table, parts=("pairwise",))


def _check_eps(eps: float) -> None:
    if not 0.0 <= eps <= 1.0:
        raise PreconditionError(f"epsilon must lie in [0, 1], got {eps}")


def verify_as_envelope(F: Objective, f: Objective, eps: float, gs: GroundSet | None = None,
                       limits: Limits = DEFAULT_LIMITS, tables=None) -> VerifierReport:
    """``(1-eps) f(x) <= F(x) <= (1+eps) f(x)`` for every ``x``."""
    _check_eps(eps)
    gs = gs or f.ground_set
    tF, tf = tables or (StateTable(F, gs, limits), StateTable(f, gs, limits))
    lo, hi = (1 - eps) * tf.values, (1 + eps) * tf.values
    tol = _tol(tF.values, tf.values)
    bad = np.flatnonzero((tF.values < lo - tol) | (tF.values > hi + tol))
    w = None
    if bad.size:
        c = int(bad[0])
        w = Witness(tF.assignment(c), values={"F(x)": tF.values[c], "f(x)": tf.values[c]})
    return VerifierReport("as_envelope", w is None, w, epsilon=eps)


def verify_adr_envelope(F: Objective, f: Objective, eps: float, gs: GroundSet | None = None,
                        limits: Limits = DEFAULT_LIMITS, tables=None,
                        canonical_only: bool = False) -> VerifierReport:
    """Marginal-gain sandwich ``(1-eps) D f <= D F <= (1+eps) D f``.

    With ``canonical_only`` only marginals that extend ``x`` by an element
    larger than every element of ``supp(x)`` are checked, i.e. exactly the
    steps of ascending-id chains.
    """
    _check_eps(eps)
    gs = gs or f.ground_set
    tF, tf = tables or (StateTable(F, gs, limits), StateTable(f, gs, limits))
    n, k = tf.n, tf.k
    found = []
    if canonical_only:
        # largest selected element of every state, -1 for the empty state
        top = np.full(tf.size, -1)
        for e in range(n):
            top = np.where(tf.digits[e] > 0, e, top)
    for u in range(n):
        codes = tf.free(u)
        if canonical_only:
            codes = codes[top[codes] < u]
        for i in range(1, k + 1):
            gF, gf = tF.gains(u, i, codes), tf.gains(u, i, codes)
            up = codes + i * tf.weights[u]
            tol = _tol(tF.values[codes], tF.values[up], tf.values[codes], tf.values[up])
            bad = np.flatnonzero((gF < (1 - eps) * gf - tol) | (gF > (1 + eps) * gf + tol))
            if bad.size:
                b = bad[0]
                c = int(codes[b])
                found.append(((c, u, i), Witness(
                    tf.assignment(c), None, u, i,
                    values={"dF": float(gF[b]), "df": float(gf[b])})))
    w = _first(found)
    return VerifierReport("adr_envelope", w is None, w, epsilon=eps)


def min_epsilon_as(F: Objective, f: Objective, gs: GroundSet | None = None,
                   limits: Limits = DEFAULT_LIMITS, tables=None) -> float:
    """Smallest ``eps`` with ``(1-eps) f <= F <= (1+eps) f`` everywhere."""
    gs = gs or f.ground_set
    tF, tf = tables or (StateTable(F, gs, limits), StateTable(f, gs, limits))
    Fv, fv = tF.values, tf.values
    zero = fv == 0
    if np.any(zero & (Fv != 0)):
        return math.inf
    ratios = np.abs(Fv[~zero] / fv[~zero] - 1.0)
    return float(ratios.max()) if ratios.size else 0.0
