"""Built-in monotone k-submodular objectives, synthetic instances and ingestion."""

from __future__ import annotations

from ..core import ConfigError
from .cascade import CascadeModel, DirectedGraph, SpreadObjective, random_cascade, random_graph
from .coverage import CoverageObjective, random_coverage
from .entropy import EntropyObjective, SensorModel, quantize, random_sensor_model
from .io import ParseError, load_edge_list, load_sensor_csv, save_edge_list, save_sensor_csv


def entropy_eval(model: SensorModel, x) -> float:
    return EntropyObjective(model)(x)


def spread_eval(model: CascadeModel, x) -> float:
    return SpreadObjective(model)(x)


def gen_synthetic(kind: str, params: dict | None = None, seed=None):
    """Deterministic synthetic instance of ``kind`` (coverage | sensor | cascade).

    Returns a :class:`CoverageObjective`, :class:`SensorModel` or
    :class:`CascadeModel`.
    """
    params = dict(params or {})
    if kind == "coverage":
        return random_coverage(seed=seed, **params)
    if kind == "sensor":
        return random_sensor_model(seed=seed, **params)
    if kind == "cascade":
        return random_cascade(seed=seed, **params)
    raise ConfigError(f"unknown instance kind {kind!r}; expected coverage, sensor or cascade")


def objective_for(instance, k: int | None = None):
    """Wrap a generated or loaded instance as an objective over its first ``k`` dimensions."""
    if isinstance(instance, SensorModel):
        return EntropyObjective(instance, k)
    if isinstance(instance, CascadeModel):
        return SpreadObjective(instance, k)
    if isinstance(instance, CoverageObjective):
        return instance if k is None or k == instance.k else instance.restrict(k)
    raise ConfigError(f"cannot build an objective from {type(instance).__name__}")


__all__ = [
    "CascadeModel", "CoverageObjective", "DirectedGraph", "EntropyObjective", "ParseError",
    "SensorModel", "SpreadObjective", "entropy_eval", "gen_synthetic", "load_edge_list",
    "load_sensor_csv", "objective_for", "quantize", "random_cascade", "random_coverage",
    "random_graph", "random_sensor_model", "save_edge_list", "save_sensor_csv", "spread_eval",
]
