"""Fixed two-element instances showing where the noisy constructions break.

Every fixture uses ``k = 1`` and a modular base with ``f(u) = 1`` and
``f(v) = 1/2``, so ``f({u,v}) - f({v}) = f({u})`` and ``f({u,v}) = 1.5 f({u})``.
The noise draws are pinned to the hand-picked values, which makes the
marginal of ``u`` at ``{v}`` exceed its marginal at the empty set.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import Assignment, ConfigError, FunctionObjective, ModularObjective, Objective
from .noise import NoiseSpec, NoisyObjective


@dataclass
class Counterexample:
    name: str
    F: Objective
    f: Objective
    epsilon: float
    u: int
    v: int
    # the violation named in the construction: marginal of ``element`` at
    # ``y`` beats its marginal at ``x``
    x: Assignment
    y: Assignment | None
    element: int


def _base(u: int, v: int) -> ModularObjective:
    w = [0.0, 0.0]
    w[u], w[v] = 1.0, 0.5
    return ModularObjective(w)


def _pair(u_label: int, v_label: int, u: int, v: int) -> Assignment:
    labels = [0, 0]
    labels[u], labels[v] = u_label, v_label
    return Assignment(tuple(labels), 1)


def as_counterexample(method: str, eps: float = 0.5) -> Counterexample:
    """AS-style F (value noise) that is not k-submodular."""
    u, v = 0, 1
    f = _base(u, v)
    spec = NoiseSpec(method, "AS", eps, 0)
    if spec.method == "AG":
        F = NoisyObjective(f, spec, state_xi={
            _pair(1, 0, u, v).labels: 1.0 - eps,
            _pair(0, 1, u, v).labels: 1.0,
            (1, 1): 1.0,
        })
    else:
        F = NoisyObjective(f, spec, element_xi={u: 1.0 - eps, v: 1.0})
    return Counterexample(f"{spec.method.lower()}-as", F, f, eps, u, v,
                          Assignment((0, 0), 1), _pair(0, 1, u, v), u)


def adr_counterexample(method: str, eps: float = 0.5) -> Counterexample:
    """ADR-style F (gain noise) that is not k-submodular.

    Chains add elements in increasing id, so ``v`` gets id 0 here: the gain
    of ``u`` at ``{v}`` is then a chain step and carries the pinned noise.
    """
    u, v = 1, 0
    f = _base(u, v)
    spec = NoiseSpec(method, "ADR", eps, 0)
    if spec.method == "AG":
        # noise of a step is keyed by the state it starts from
        F = NoisyObjective(f, spec, state_xi={(0, 0): 1.0 - eps, _pair(0, 1, u, v).labels: 1.0})
    else:
        F = NoisyObjective(f, spec, element_xi={u: 1.0 - eps, v: 1.0})
    return Counterexample(f"{spec.method.lower()}-adr", F, f, eps, u, v,
                          Assignment((0, 0), 1), _pair(0, 1, u, v), u)


def as_not_adr(eps: float = 0.3) -> Counterexample:
    """F within the value envelope whose gain at ``{e1}`` drops below ``(1-eps)`` of f's."""
    e1, e2 = 0, 1
    # coverage: e1 covers {a, b}, e2 covers {b, c}
    cover = {(0, 0): 0.0, (1, 0): 2.0, (0, 1): 2.0, (1, 1): 3.0}
    f = FunctionObjective(lambda x: cover[x], 2, 1, name="coverage2", exact=True)
    scale = {(0, 0): 1.0, (1, 0): 1.0 + eps, (0, 1): 1.0 - eps, (1, 1): 1.0 - eps}
    F = FunctionObjective(lambda x: scale[x] * cover[x], 2, 1, name="as_not_adr")
    return Counterexample("as-not-adr", F, f, eps, e2, e1,
                          Assignment((1, 0), 1), None, e2)


FIXTURES = {
    "ag-as": lambda eps: as_counterexample("AG", eps),
    "maxg-as": lambda eps: as_counterexample("MaxG", eps),
    "meang-as": lambda eps: as_counterexample("MeanG", eps),
    "ag-adr": lambda eps: adr_counterexample("AG", eps),
    "maxg-adr": lambda eps: adr_counterexample("MaxG", eps),
    "meang-adr": lambda eps: adr_counterexample("MeanG", eps),
    "as-not-adr": as_not_adr,
}


def fixture(name: str, eps: float | None = None) -> Counterexample:
    if name not in FIXTURES:
        raise ConfigError(f"unknown fixture {name!r}; expected one of {sorted(FIXTURES)}")
    return FIXTURES[name](0.3 if eps is None and name == "as-not-adr" else (0.5 if eps is None else eps))
