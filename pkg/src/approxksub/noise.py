"""Noisy objectives ``F`` built around a monotone k-submodular base ``f``.

Three generation methods are supported, each in two styles:

* ``AS``  -- values are perturbed, ``F(x) = xi(x) * f(x)``.
* ``ADR`` -- marginal gains are perturbed, ``D F = xi * D f``, and ``F(x)`` is
  the sum of perturbed gains along the canonical chain of ``x`` (elements of
  ``supp(x)`` added in increasing id order, each with its own label).

Noise draws are pure functions of ``(seed, key)`` so that ``F`` is a fixed
function regardless of query order, process, or thread.
"""

from __future__ import annotations

import hashlib
import random
import struct
from dataclasses import dataclass
from typing import Mapping, Optional

from .core import (
    Assignment,
    ConfigError,
    Constraint,
    GroundSet,
    Objective,
    labels_of,
)
from .greedy import greedy

METHODS = ("AG", "MaxG", "MeanG")
STYLES = ("AS", "ADR")


@dataclass(frozen=True)
class NoiseSpec:
    method: str
    style: str = "AS"
    epsilon: float = 0.0
    seed: int = 0

    def __post_init__(self):
        method = _normalize(self.method, METHODS, "noise method")
        style = _normalize(self.style, STYLES, "noise style")
        object.__setattr__(self, "method", method)
        object.__setattr__(self, "style", style)
        if not 0.0 <= float(self.epsilon) <= 1.0:
            raise ConfigError(f"epsilon must lie in [0, 1], got {self.epsilon}")


def _normalize(value, choices, what):
    for c in choices:
        if str(value).lower() == c.lower():
            return c
    raise ConfigError(f"unknown {what} {value!r}; expected one of {choices}")


def canonical(x) -> bytes:
    """Fixed-width byte encoding of an assignment (the label array itself)."""
    labels = labels_of(x)
    if max(labels, default=0) < 256:
        return bytes(labels)
    return struct.pack(f">{len(labels)}H", *labels)


def uniform_draw(seed: int, tag: str, key) -> float:
    """One uniform draw in ``[0, 1)`` determined by ``(seed, tag, key)``."""
    if isinstance(key, int):
        key = key.to_bytes(8, "big", signed=True)
    h = hashlib.blake2b(digest_size=8)
    h.update(int(seed).to_bytes(8, "big", signed=True))
    h.update(tag.encode())
    h.update(key)
    return random.Random(int.from_bytes(h.digest(), "big")).random()


class NoisyObjective(Objective):
    """``F`` derived from ``base`` according to a :class:`NoiseSpec`.

    ``element_xi`` and ``state_xi`` override individual noise draws (used to
    reproduce hand-built counterexamples); ``pinned_solution`` is the AG
    solution ``x_f`` that receives the ``1 + eps`` boost.
    """

    claims_exact_ksubmodular = False

    def __init__(self, base: Objective, spec: NoiseSpec,
                 pinned_solution: Optional[Assignment] = None,
                 element_xi: Optional[Mapping[int, float]] = None,
                 state_xi: Optional[Mapping[bytes, float]] = None):
        super().__init__(base.n, base.k)
        self.base = base
        self.spec = spec
        self.eps = float(spec.epsilon)
        self.pinned_solution = pinned_solution
        self._pinned = None if pinned_solution is None else labels_of(pinned_solution)
        self.name = f"{spec.method}-{spec.style}({base.name})"
        self._element_override = dict(element_xi or {})
        self._state_override = {canonical(kk) if not isinstance(kk, bytes) else kk: v
                                for kk, v in (state_xi or {}).items()}
        # caches are insert-if-absent; racing writers store identical values
        self._elem_cache: dict[int, float] = {}
        self._state_cache: dict[bytes, float] = {}
        self._chain_cache: dict[tuple, float] = {}
        self._f_cache: dict[tuple, float] = {}

    # -- noise draws -------------------------------------------------------

    def element_noise(self, e: int) -> float:
        """``xi(e)`` in ``[1-eps, 1]``."""
        if e in self._element_override:
            return self._element_override[e]
        xi = self._elem_cache.get(e)
        if xi is None:
            xi = 1.0 - self.eps * uniform_draw(self.spec.seed, "element", e)
            xi = self._elem_cache.setdefault(e, xi)
        return xi

    def state_noise(self, labels: tuple) -> float:
        """``xi(x)`` in ``[1-eps, 1]`` for a whole assignment."""
        key = canonical(labels)
        if key in self._state_override:
            return self._state_override[key]
        xi = self._state_cache.get(key)
        if xi is None:
            xi = 1.0 - self.eps * uniform_draw(self.spec.seed, "state", key)
            xi = self._state_cache.setdefault(key, xi)
        return xi

    def _f(self, labels: tuple) -> float:
        v = self._f_cache.get(labels)
        if v is None:
            v = self._f_cache.setdefault(labels, self.base(labels))
        return v

    # -- AS style ------------------------------------------------------------

    def _value(self, labels):
        if self.spec.style == "ADR":
            return self._chain_value(labels)
        fx = self._f(labels)
        support = [e for e, v in enumerate(labels) if v]
        if not support:
            return fx
        m = self.spec.method
        if m == "AG":
            if labels == self._pinned:
                return (1.0 + self.eps) * fx
            return self.state_noise(labels) * fx
        xis = [self.element_noise(e) for e in support]
        if m == "MaxG":
            return max(xis) * fx
        return sum(xis) / len(xis) * fx

    # -- ADR style -----------------------------------------------------------

    def step_noise(self, prefix: tuple, e: int, i: int, inside_pinned: bool) -> float:
        """Multiplier applied to the gain of adding ``(e, i)`` to ``prefix``."""
        m = self.spec.method
        if m == "AG":
            if inside_pinned:
                return 1.0 + self.eps
            return self.state_noise(prefix)
        xis = [self.element_noise(u) for u, v in enumerate(prefix) if v]
        xe = self.element_noise(e)
        if m == "MaxG":
            return max([xe] + xis)
        return (xe + sum(xis)) / (len(xis) + 1)

    def _chain_value(self, labels: tuple) -> float:
        cached = self._chain_cache.get(labels)
        if cached is not None:
            return cached
        support = [e for e, v in enumerate(labels) if v]
        if not support:
            return self._f(labels)
        # F(x) = F(x minus its largest element) + xi * gain of that element
        last = support[-1]
        prefix = labels[:last] + (0,) + labels[last + 1:]
        inside = self._pinned is not None and all(
            self._pinned[e] == labels[e] for e in support)
        xi = self.step_noise(prefix, last, labels[last], inside)
        val = self._chain_value(prefix) + xi * (self._f(labels) - self._f(prefix))
        return self._chain_cache.setdefault(labels, val)

    def chain(self, x) -> list[tuple[tuple, int, int]]:
        """``(prefix, element, dimension)`` steps of the canonical chain of ``x``."""
        labels = list(labels_of(x))
        prefix = [0] * len(labels)
        out = []
        for e, v in enumerate(labels):
            if v:
                out.append((tuple(prefix), e, v))
                prefix[e] = v
        return out


# --------------------------------------------------------------------------
# constructors


def _pin(f: Objective, gs: GroundSet, c: Constraint) -> Assignment:
    return greedy(f, gs, c).solution


def make_ag_as(f: Objective, gs: GroundSet, c: Constraint, eps: float, seed: int) -> NoisyObjective:
    """Adversarial generation: boost ``f``'s own greedy solution, shrink the rest."""
    spec = NoiseSpec("AG", "AS", eps, seed)
    return NoisyObjective(f, spec, pinned_solution=_pin(f, gs, c))


def make_maxg_as(f: Objective, gs: GroundSet, eps: float, seed: int) -> NoisyObjective:
    return NoisyObjective(f, NoiseSpec("MaxG", "AS", eps, seed))


def make_meang_as(f: Objective, gs: GroundSet, eps: float, seed: int) -> NoisyObjective:
    return NoisyObjective(f, NoiseSpec("MeanG", "AS", eps, seed))


def make_adr(method: str, f: Objective, gs: GroundSet, c: Optional[Constraint], eps: float,
             seed: int) -> NoisyObjective:
    spec = NoiseSpec(method, "ADR", eps, seed)
    pinned = None
    if spec.method == "AG":
        if c is None:
            raise ConfigError("AG noise needs the constraint to compute f's greedy solution")
        pinned = _pin(f, gs, c)
    return NoisyObjective(f, spec, pinned_solution=pinned)


def make_noisy(f: Objective, gs: GroundSet, spec: NoiseSpec,
               c: Optional[Constraint] = None) -> NoisyObjective:
    """Dispatch on ``spec`` to the matching constructor."""
    if spec.style == "ADR":
        return make_adr(spec.method, f, gs, c, spec.epsilon, spec.seed)
    if spec.method == "AG":
        if c is None:
            raise ConfigError("AG noise needs the constraint to compute f's greedy solution")
        return make_ag_as(f, gs, c, spec.epsilon, spec.seed)
    if spec.method == "MaxG":
        return make_maxg_as(f, gs, spec.epsilon, spec.seed)
    return make_meang_as(f, gs, spec.epsilon, spec.seed)
