"""k-Greedy-TS / k-Greedy-IS / group-size greedy, lazy evaluation, baselines.

All three greedy variants share one loop: a dimension stays *active* while
the group it belongs to is below its cap, and every iteration adds the
(element, dimension) pair with the largest marginal gain among unassigned
elements and active dimensions.  A total-size budget is a single group of all
dimensions; individual sizes are singleton groups.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field

import numpy as np

from .core import (
    Assignment,
    Constraint,
    GroundSet,
    GroupSize,
    IndividualSize,
    InfeasibleConstraintError,
    Objective,
    PreconditionError,
    TotalSize,
    add_label,
)

TIE_BREAKS = ("lowest", "highest")


@dataclass(frozen=True)
class GreedyStep:
    iteration: int
    element: int
    dimension: int
    gain: float
    value: float


@dataclass
class GreedyTrace:
    steps: list
    solution: Assignment
    eval_count: int
    lazy: bool = False
    constraint: Constraint | None = None

    @property
    def value(self) -> float:
        return self.steps[-1].value if self.steps else 0.0

    def prefixes(self) -> list[Assignment]:
        """``x^(0), x^(1), ..., x^(B)``."""
        labels = [0] * self.solution.n
        out = [Assignment(tuple(labels), self.solution.k)]
        for s in self.steps:
            labels[s.element] = s.dimension
            out.append(Assignment(tuple(labels), self.solution.k))
        return out

    def pairs(self) -> list[tuple[int, int]]:
        return [(s.element, s.dimension) for s in self.steps]


def _check_tie_break(rule: str) -> None:
    if rule not in TIE_BREAKS:
        raise PreconditionError(f"unknown tie-break rule {rule!r}; expected one of {TIE_BREAKS}")


def greedy(obj: Objective, gs: GroundSet, constraint: Constraint, lazy: bool = False,
           tie_break: str = "lowest") -> GreedyTrace:
    """Run the greedy matching ``constraint`` (TS, IS or group size)."""
    _check_tie_break(tie_break)
    constraint.check(gs)
    if obj.n != gs.n or obj.k != gs.k:
        raise PreconditionError(f"objective is over n={obj.n}, k={obj.k}; ground set is {gs}")
    start = obj.eval_count
    if lazy:
        steps, labels = _lazy_loop(obj, gs, constraint, tie_break)
    else:
        steps, labels = _scan_loop(obj, gs, constraint, tie_break)
    return GreedyTrace(steps, Assignment(labels, gs.k), obj.eval_count - start,
                       lazy=lazy, constraint=constraint)


def greedy_ts(obj: Objective, gs: GroundSet, B: int, lazy: bool = False,
              tie_break: str = "lowest") -> GreedyTrace:
    if B > gs.n:
        raise InfeasibleConstraintError(f"budget B={B} exceeds n={gs.n}")
    return greedy(obj, gs, TotalSize(gs.k, B), lazy, tie_break)


def greedy_is(obj: Objective, gs: GroundSet, caps, lazy: bool = False,
              tie_break: str = "lowest") -> GreedyTrace:
    caps = list(caps)
    if len(caps) != gs.k:
        raise PreconditionError(f"need {gs.k} individual caps, got {len(caps)}")
    if sum(caps) > gs.n:
        raise InfeasibleConstraintError(f"sum of caps {sum(caps)} exceeds n={gs.n}")
    return greedy(obj, gs, IndividualSize(caps), lazy, tie_break)


def greedy_group(obj: Objective, gs: GroundSet, groups, caps, lazy: bool = False,
                 tie_break: str = "lowest") -> GreedyTrace:
    return greedy(obj, gs, GroupSize(gs.k, groups, caps), lazy, tie_break)


def _scan_loop(obj, gs, constraint, tie_break):
    n, k = gs.n, gs.k
    labels = (0,) * n
    loads = [0] * len(constraint.groups)
    active = list(range(1, k + 1))
    current = obj(labels)
    steps = []
    prefer_later = tie_break == "highest"
    j = 0
    while active:
        j += 1
        best = None
        for e in range(n):
            if labels[e]:
                continue
            for i in active:
                val = obj(add_label(labels, e, i))
                gain = val - current
                if best is None or gain > best[0] or (prefer_later and gain == best[0]):
                    best = (gain, e, i, val)
        if best is None:
            raise InfeasibleConstraintError("ran out of unassigned elements")
        gain, e, i, val = best
        labels = add_label(labels, e, i)
        current = val
        steps.append(GreedyStep(j, e, i, gain, val))
        active = _update_active(constraint, loads, i, active)
    return steps, labels


def _update_active(constraint, loads, i, active):
    g = constraint.group_of[i]
    loads[g] += 1
    if loads[g] >= constraint.caps[g]:
        closed = set(constraint.groups[g])
        active = [d for d in active if d not in closed]
    return active


def _lazy_loop(obj, gs, constraint, tie_break):
    """Lazy evaluation with a max-heap of stale marginal-gain upper bounds.

    Each heap entry remembers the iteration at which its gain was computed.
    A popped entry that is current is selected; a stale one is re-evaluated
    and pushed back.  Exact only when the diminishing-returns property holds.
    """
    n, k = gs.n, gs.k
    sign = -1 if tie_break == "highest" else 1
    labels = (0,) * n
    loads = [0] * len(constraint.groups)
    active = set(range(1, k + 1))
    current = obj(labels)
    heap = []
    for e in range(n):
        for i in range(1, k + 1):
            val = obj(add_label(labels, e, i))
            heap.append((-(val - current), sign * e, sign * i, 0, val))
    heapq.heapify(heap)
    steps = []
    j = 0
    while active:
        while True:
            if not heap:
                raise InfeasibleConstraintError("ran out of unassigned elements")
            neg_gain, se, si, stamp, val = heapq.heappop(heap)
            e, i = sign * se, sign * si
            if labels[e] or i not in active:
                continue
            if stamp == j:
                break
            val = obj(add_label(labels, e, i))
            heapq.heappush(heap, (-(val - current), se, si, j, val))
        j += 1
        labels = add_label(labels, e, i)
        steps.append(GreedyStep(j, e, i, -neg_gain, val))
        current = val
        active = set(_update_active(constraint, loads, i, sorted(active)))
    return steps, labels


# --------------------------------------------------------------------------
# baselines


def baseline_random(gs: GroundSet, c: Constraint, seed) -> Assignment:
    """Uniformly random assignment that saturates ``c``."""
    c.check(gs)
    rng = np.random.default_rng(seed)
    order = rng.permutation(gs.n)
    labels = [0] * gs.n
    pos = 0
    for group, cap in zip(c.groups, c.caps):
        chosen = order[pos:pos + cap]
        pos += cap
        dims = rng.choice(np.asarray(group), size=cap)
        for e, d in zip(chosen, dims):
            labels[int(e)] = int(d)
    return Assignment(tuple(labels), gs.k)


def baseline_degree(graph, gs: GroundSet, B: int, seed) -> Assignment:
    """Top-``B`` out-degree nodes (ties by smaller id), each on a random dimension.

    ``graph`` is anything exposing ``out_degrees()``, or a degree sequence.
    """
    if B > gs.n:
        raise InfeasibleConstraintError(f"budget B={B} exceeds n={gs.n}")
    degrees = graph.out_degrees() if hasattr(graph, "out_degrees") else graph
    degrees = np.asarray(degrees)[:gs.n]
    if len(degrees) < gs.n:
        raise PreconditionError("graph has fewer nodes than the ground set")
    ids = np.arange(gs.n)
    order = np.lexsort((ids, -degrees))[:B]
    rng = np.random.default_rng(seed)
    dims = rng.integers(1, gs.k + 1, size=B)
    labels = [0] * gs.n
    for e, d in zip(order, dims):
        labels[int(e)] = int(d)
    return Assignment(tuple(labels), gs.k)


# --------------------------------------------------------------------------
# interpolated optimum used by the per-iteration lemma checks


@dataclass
class Interpolation:
    """``o^(0) = o, o^(1/2), o^(1), ..., o^(B) = x`` aligned with a greedy trace."""

    full: list  # o^(0) .. o^(B)
    half: list  # o^(1/2) .. o^(B - 1/2); half[j-1] is o^(j-1/2)
    removed: list  # o^(j)
    cases: list = field(default_factory=list)  # "TS", "C1" or "C2" per iteration
    swapped_dims: list = field(default_factory=list)  # i' in case C1, else None


def pad_solution(o: Assignment, c: Constraint) -> Assignment:
    """Extend ``o`` with smallest free elements until every group cap is met.

    The lemma chain needs ``|supp(o)| = B`` (TS) or ``|supp_i(o)| = B_i`` (IS).
    """
    labels = list(o.labels)
    loads = c.group_loads(labels)
    free = (e for e in range(len(labels)) if not labels[e])
    for g, (group, cap) in enumerate(zip(c.groups, c.caps)):
        while loads[g] < cap:
            labels[next(free)] = min(group)
            loads[g] += 1
    return Assignment(tuple(labels), o.k)


def interpolate_ts(trace: GreedyTrace, o: Assignment) -> Interpolation:
    """Morph ``o`` into the greedy solution one iteration at a time (TS)."""
    xs = trace.prefixes()
    B = len(trace.steps)
    if o.size() != B:
        raise PreconditionError(f"optimum must select exactly B={B} elements, has {o.size()}")
    cur = list(o.labels)
    full, half, removed = [o], [], []
    for j, step in enumerate(trace.steps, start=1):
        x_prev = xs[j - 1].labels
        S = [e for e in range(len(cur)) if cur[e] and not x_prev[e]]
        oj = step.element if step.element in S else min(S)
        cur[oj] = 0
        half.append(Assignment(tuple(cur), o.k))
        cur[step.element] = step.dimension
        full.append(Assignment(tuple(cur), o.k))
        removed.append(oj)
    out = Interpolation(full, half, removed, cases=["TS"] * B, swapped_dims=[None] * B)
    _assert_sandwich(xs, out)
    return out


def interpolate_is(trace: GreedyTrace, o: Assignment) -> Interpolation:
    """Morph ``o`` into the greedy solution under individual caps (cases C1/C2)."""
    xs = trace.prefixes()
    target = trace.solution.counts()
    if o.counts() != target:
        raise PreconditionError(f"optimum must have per-dimension sizes {target}, has {o.counts()}")
    cur = list(o.labels)
    full, half, removed, cases, swaps = [o], [], [], [], []
    for j, step in enumerate(trace.steps, start=1):
        x_prev = xs[j - 1].labels
        e, i = step.element, step.dimension

        def S(dim):
            return [u for u in range(len(cur)) if cur[u] == dim and x_prev[u] != dim]

        other = cur[e] if cur[e] not in (0, i) and x_prev[e] != cur[e] else None
        if other is not None:
            oj = min(S(i))
            cur[e] = 0
            cur[oj] = 0
            half.append(Assignment(tuple(cur), o.k))
            cur[e] = i
            cur[oj] = other
            cases.append("C1")
        else:
            Si = S(i)
            oj = e if e in Si else min(Si)
            cur[oj] = 0
            half.append(Assignment(tuple(cur), o.k))
            cur[e] = i
            cases.append("C2")
        swaps.append(other)
        full.append(Assignment(tuple(cur), o.k))
        removed.append(oj)
    out = Interpolation(full, half, removed, cases=cases, swapped_dims=swaps)
    _assert_sandwich(xs, out)
    return out


def _assert_sandwich(xs, interp):
    for j, h in enumerate(interp.half, start=1):
        if not xs[j - 1].precedes(h):
            raise AssertionError(f"x^({j - 1}) is not below o^({j - 1}/2)")
    if interp.full[-1] != xs[-1]:
        raise AssertionError("interpolation does not end at the greedy solution")
