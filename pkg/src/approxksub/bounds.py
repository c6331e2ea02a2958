"""Closed-form approximation ratios for greedy on noisy objectives.

``a = (1 - eps) / (1 + eps)`` is the transfer factor between a solution that
is good for ``f`` and its value under ``F``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import ConfigError

K_REGIMES = ("k1", "k_ge2")
CONSTRAINTS = ("TS", "IS")
CLASSES = ("AS", "ADR")
SOURCES = ("on_F", "on_f")

#: Ratio of the plain greedy for an exactly k-submodular function.
EXACT_RATIO = {"k1": 1.0 - 1.0 / math.e, "TS": 0.5, "IS": 1.0 / 3.0}


@dataclass(frozen=True)
class BoundQuery:
    k_regime: str
    constraint: str = "TS"
    function_class: str = "AS"
    solution_source: str = "on_F"
    epsilon: float = 0.0
    B: int = 1

    def __post_init__(self):
        for value, choices, what in ((self.k_regime, K_REGIMES, "k regime"),
                                     (self.constraint, CONSTRAINTS, "constraint"),
                                     (self.function_class, CLASSES, "function class"),
                                     (self.solution_source, SOURCES, "solution source")):
            if value not in choices:
                raise ConfigError(f"unknown {what} {value!r}; expected one of {choices}")
        if not 0.0 <= float(self.epsilon) <= 1.0:
            raise ConfigError(f"epsilon must lie in [0, 1], got {self.epsilon}")
        if int(self.B) < 1:
            raise ConfigError(f"B must be >= 1, got {self.B}")

    @classmethod
    def for_k(cls, k: int, **kw) -> "BoundQuery":
        return cls("k1" if k == 1 else "k_ge2", **kw)


@dataclass(frozen=True)
class Bound:
    formula: str
    value: float
    query: BoundQuery
    routed: bool = False  # ADR query answered through the AS transfer

    def line(self) -> str:
        q = self.query
        tag = " [ADR served via AS transfer]" if self.routed else ""
        return (f"{self.formula}: k={q.k_regime} constraint={q.constraint} class={q.function_class} "
                f"source={q.solution_source} eps={q.epsilon:g} B={q.B} ratio={self.value:.9g}{tag}")


def transfer_factor(eps: float) -> float:
    return (1.0 - eps) / (1.0 + eps)


def horel_ratio(eps: float, B: int) -> float:
    """Monotone submodular greedy under eps-approximate values (k = 1)."""
    if eps >= 1.0:
        return 0.0
    a = transfer_factor(eps)
    lead = 1.0 / (1.0 + 4.0 * B * eps / (1.0 - eps) ** 2)
    return lead * (1.0 - a ** (2 * B) * (1.0 - 1.0 / B) ** B)


def bound(q: BoundQuery) -> Bound:
    eps, B = float(q.epsilon), int(q.B)
    a = transfer_factor(eps)
    # for k = 1 both constraints coincide
    cls = "k1" if q.k_regime == "k1" else q.constraint

    if q.solution_source == "on_f":
        return Bound(f"transfer_{cls}", a * EXACT_RATIO[cls], q, routed=q.function_class == "ADR")

    if q.function_class == "ADR":
        if cls == "k1":
            return Bound("adr_k1", 1.0 - math.exp(-a), q)
        if cls == "TS":
            return Bound("adr_TS", (1.0 - eps) / 2.0, q)
        return Bound("adr_IS", (1.0 - eps) / (3.0 + eps), q)

    if cls == "k1":
        return Bound("as_k1_horel", horel_ratio(eps, B), q)
    if cls == "TS":
        value = (1.0 - eps) ** 2 / (2.0 * (1.0 - eps + eps * B) * (1.0 + eps))
        return Bound("as_TS", value, q)
    value = (1.0 - eps) ** 2 / ((3.0 - 3.0 * eps + 2.0 * eps * B) * (1.0 + eps))
    return Bound("as_IS", value, q)


def ratio(q: BoundQuery) -> float:
    return bound(q).value
