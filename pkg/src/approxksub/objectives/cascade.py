"""k-topic independent cascade spread under fixed live-edge samples."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..core import Objective, PreconditionError


@dataclass
class DirectedGraph:
    n_nodes: int
    src: np.ndarray
    dst: np.ndarray
    node_ids: list = field(default_factory=list)

    def __post_init__(self):
        self.src = np.asarray(self.src, dtype=np.int64)
        self.dst = np.asarray(self.dst, dtype=np.int64)
        if not self.node_ids:
            self.node_ids = list(range(self.n_nodes))

    @property
    def n_edges(self) -> int:
        return len(self.src)

    def out_degrees(self) -> np.ndarray:
        return np.bincount(self.src, minlength=self.n_nodes)


class CascadeModel:
    """Graph, per-topic edge probabilities and ``R`` live-edge samples per topic.

    The samples are drawn once at construction from ``sample_seed`` (common
    random numbers), which turns the expected spread into an average of
    ``R`` coverage functions.
    """

    def __init__(self, graph: DirectedGraph, probabilities, R: int = 64, sample_seed: int = 0):
        p = np.asarray(probabilities, dtype=float)
        if p.ndim == 1:
            p = p[:, None]
        if p.shape[0] != graph.n_edges:
            raise PreconditionError(f"{p.shape[0]} probability rows for {graph.n_edges} edges")
        if np.any(p < 0) or np.any(p > 1):
            raise PreconditionError("edge probabilities must lie in [0, 1]")
        if R < 1:
            raise PreconditionError("need at least one live-edge sample")
        self.graph = graph
        self.probabilities = p
        self.R = int(R)
        self.sample_seed = sample_seed
        rng = np.random.default_rng(sample_seed)
        # live[r, i] -> adjacency lists of the surviving edges
        live = rng.random((self.R, self.k, graph.n_edges)) < p.T[None, :, :]
        self._adj = []
        for r in range(self.R):
            per_topic = []
            for i in range(self.k):
                keep = live[r, i]
                adj = [[] for _ in range(graph.n_nodes)]
                for s, d in zip(graph.src[keep].tolist(), graph.dst[keep].tolist()):
                    adj[s].append(d)
                per_topic.append(adj)
            self._adj.append(per_topic)
        self._reach: dict[tuple, int] = {}

    @property
    def k(self) -> int:
        return self.probabilities.shape[1]

    @property
    def n(self) -> int:
        return self.graph.n_nodes

    def live_edges(self, r: int, i: int) -> list[tuple[int, int]]:
        """Surviving edges of sample ``r`` for topic ``i`` (0-based)."""
        return [(u, w) for u, targets in enumerate(self._adj[r][i]) for w in targets]

    def reach(self, r: int, i: int, v: int) -> int:
        """Bitmask of nodes reachable from ``v`` in sample ``r`` of topic ``i`` (0-based)."""
        key = (r, i, v)
        mask = self._reach.get(key)
        if mask is None:
            adj = self._adj[r][i]
            seen = 1 << v
            stack = [v]
            while stack:
                u = stack.pop()
                for w in adj[u]:
                    if not (seen >> w) & 1:
                        seen |= 1 << w
                        stack.append(w)
            mask = self._reach.setdefault(key, seen)
        return mask


class SpreadObjective(Objective):
    """``I(x)``: mean over samples of ``|union_i reach_i(supp_i(x))|``."""

    name = "spread"
    claims_exact_ksubmodular = True

    def __init__(self, model: CascadeModel, k: int | None = None):
        k = model.k if k is None else int(k)
        if k > model.k:
            raise PreconditionError(f"model has {model.k} topics, asked for {k}")
        super().__init__(model.n, k)
        self.model = model

    def _value(self, labels):
        seeds = [(u, v - 1) for u, v in enumerate(labels) if v]
        if not seeds:
            return 0.0
        reach = self.model.reach
        total = 0
        for r in range(self.model.R):
            covered = 0
            for u, i in seeds:
                covered |= reach(r, i, u)
            total += covered.bit_count()
        return total / self.model.R


def random_graph(n_nodes: int, avg_degree: float = 3.0, seed=None) -> DirectedGraph:
    """Directed graph with heavy-tailed out-degrees and no self loops."""
    rng = np.random.default_rng(seed)
    activity = rng.pareto(2.0, size=n_nodes) + 1.0
    out_deg = np.minimum(rng.poisson(avg_degree * activity / activity.mean()), n_nodes - 1)
    src, dst = [], []
    for u, d in enumerate(out_deg):
        targets = rng.choice(np.delete(np.arange(n_nodes), u), size=int(d), replace=False)
        src.extend([u] * len(targets))
        dst.extend(sorted(targets.tolist()))
    return DirectedGraph(n_nodes, np.array(src, dtype=np.int64), np.array(dst, dtype=np.int64))


def random_cascade(n_nodes: int, k: int, avg_degree: float = 3.0, R: int = 64,
                   p_low: float = 0.05, p_high: float = 0.3, seed=None) -> CascadeModel:
    rng = np.random.default_rng(seed)
    graph = random_graph(n_nodes, avg_degree, seed=rng.integers(2 ** 63))
    probs = rng.uniform(p_low, p_high, size=(graph.n_edges, k))
    return CascadeModel(graph, probs, R=R, sample_seed=int(rng.integers(2 ** 63)))
