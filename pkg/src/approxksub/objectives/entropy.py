"""Joint empirical entropy of quantized sensor readings (k sensor types)."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..core import Objective, PreconditionError


@dataclass
class SensorModel:
    """Quantized readings, one column per (type, location) variable.

    ``codes[t, (i-1)*n + u]`` is the bin of the reading of a type-``i`` sensor
    at location ``u`` in record ``t``; ``raw`` holds the unquantized values.
    """

    location_ids: list
    type_ids: list
    timestamps: list
    raw: np.ndarray
    codes: np.ndarray
    bins: int

    def __post_init__(self):
        if len(self.timestamps) == 0 or self.codes.shape[0] == 0:
            raise PreconditionError("sensor model has no records")
        want = (len(self.timestamps), self.n * self.k)
        if self.codes.shape != want or self.raw.shape != want:
            raise PreconditionError(f"record table shape {self.codes.shape}, expected {want}")

    @property
    def n(self) -> int:
        return len(self.location_ids)

    @property
    def k(self) -> int:
        return len(self.type_ids)

    @property
    def n_records(self) -> int:
        return len(self.timestamps)

    def column(self, i: int, u: int) -> int:
        """Column of the type-``i`` (1-based) sensor at location ``u``."""
        return (i - 1) * self.n + u

    def domain_sizes(self) -> np.ndarray:
        return np.array([len(np.unique(self.codes[:, c])) for c in range(self.codes.shape[1])])


def quantize(values: np.ndarray, bins: int) -> np.ndarray:
    """Equal-width binning of each column into ``0..bins-1``."""
    values = np.asarray(values, dtype=float)
    lo = values.min(axis=0)
    span = values.max(axis=0) - lo
    span[span == 0] = 1.0
    idx = np.floor((values - lo) / span * bins).astype(np.int64)
    return np.clip(idx, 0, bins - 1)


def entropy_of_counts(counts, log=math.log) -> float:
    total = float(sum(counts))
    return -sum((c / total) * log(c / total) for c in counts if c)


class EntropyObjective(Objective):
    """``H(x)``: plug-in entropy of the columns ``{(x(u), u) : x(u) != 0}``."""

    name = "entropy"
    claims_exact_ksubmodular = True

    def __init__(self, model: SensorModel, k: int | None = None, base: float = math.e):
        k = model.k if k is None else int(k)
        if k > model.k:
            raise PreconditionError(f"model has {model.k} sensor types, asked for {k}")
        super().__init__(model.n, k)
        self.model = model
        self.log_base = base
        self._scale = 1.0 / math.log(base)
        self._cols = model.codes.astype(np.int64)
        self._radix = int(model.bins)
        self._max_packed = int(math.floor(63 / math.log2(max(self._radix, 2))))

    def _value(self, labels):
        cols = [self.model.column(v, u) for u, v in enumerate(labels) if v]
        if not cols:
            return 0.0
        if len(cols) <= self._max_packed:
            key = np.zeros(self._cols.shape[0], dtype=np.int64)
            for c in cols:
                key = key * self._radix + self._cols[:, c]
            _, counts = np.unique(key, return_counts=True)
        else:
            _, counts = np.unique(self._cols[:, cols], axis=0, return_counts=True)
        p = counts / counts.sum()
        return float(-(p * np.log(p)).sum() * self._scale)


def random_sensor_model(n_locations: int, k: int, n_records: int = 200, bins: int = 5,
                        seed=None, length_scale: float = 0.3, noise: float = 0.5) -> SensorModel:
    """Spatially correlated readings on random locations in the unit square.

    Each record draws a latent Gaussian field over locations; sensor type
    ``i`` observes a type-specific affine map of the field plus private noise.
    """
    rng = np.random.default_rng(seed)
    pos = rng.random((n_locations, 2))
    d2 = ((pos[:, None, :] - pos[None, :, :]) ** 2).sum(-1)
    cov = np.exp(-d2 / (2 * length_scale ** 2)) + 1e-6 * np.eye(n_locations)
    chol = np.linalg.cholesky(cov)
    field = rng.standard_normal((n_records, n_locations)) @ chol.T
    gains = rng.uniform(0.5, 1.5, size=k)
    offsets = rng.uniform(-1, 1, size=k)
    raw = np.hstack([gains[i] * field + offsets[i]
                     + noise * rng.standard_normal((n_records, n_locations))
                     for i in range(k)])
    return SensorModel(list(range(n_locations)), list(range(1, k + 1)),
                       list(range(n_records)), raw, quantize(raw, bins), bins)
