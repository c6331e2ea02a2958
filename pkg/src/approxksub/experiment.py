"""Config-driven experiment runner producing one CSV of per-run and aggregate rows.

Config files are INI (``[section]`` plus ``key = value``)::

    [objective]
    kind = sensor          ; coverage | sensor | cascade
    n = 20                 ; elements (locations / nodes)
    ; path = readings.csv  ; load data instead of generating it

    [constraint]
    type = IS              ; TS | IS
    budget = 9             ; B for TS, per-dimension cap b for IS; a list sweeps

    [noise]
    methods = AG, MeanG, MaxG
    style = AS
    epsilon = 0.3          ; a list sweeps

    [sweep]
    k = 1                  ; a list sweeps

    [run]
    algorithms = greedy_F, greedy_f, random
    repetitions = 10
    seed = 20240601
"""

from __future__ import annotations

import configparser
import csv
import hashlib
import io
import itertools
import math
import statistics
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .core import (
    ConfigError,
    Constraint,
    IndividualSize,
    InfeasibleConstraintError,
    KSubError,
    TotalSize,
)
from .greedy import baseline_degree, baseline_random, greedy
from .noise import NoiseSpec, make_noisy
from .objectives import (
    CascadeModel,
    CoverageObjective,
    gen_synthetic,
    load_edge_list,
    load_sensor_csv,
    objective_for,
)

ALGORITHMS = ("greedy_F", "greedy_f", "random", "degree")
KINDS = ("coverage", "sensor", "cascade")
CSV_COLUMNS = ["method", "style", "k", "epsilon", "constraint", "budget", "algorithm", "rep",
               "agg", "F_value", "f_value", "eval_count", "wall_time", "solution", "error"]

# keys forwarded to the synthetic generators, with their types
_GEN_KEYS = {
    "coverage": {"universe_size": int, "density": float, "max_weight": int},
    "sensor": {"records": int, "bins": int, "length_scale": float, "noise": float},
    "cascade": {"avg_degree": float, "R": int, "p_low": float, "p_high": float},
}


def fmt(v) -> str:
    """Fixed 9-significant-digit formatting used for every float in outputs."""
    return f"{v:.9g}"


def derive_seed(seed: int, tag: str) -> int:
    """Independent 63-bit stream seed for ``(seed, tag)``."""
    h = hashlib.blake2b(f"{int(seed)}:{tag}".encode(), digest_size=8)
    return int.from_bytes(h.digest(), "big") >> 1


def _list(text: str, conv):
    items = [t.strip() for t in str(text).split(",") if t.strip()]
    try:
        return [conv(t) for t in items]
    except ValueError as exc:
        raise ConfigError(f"cannot parse {text!r}: {exc}") from None


def _bool(text: str) -> bool:
    t = str(text).strip().lower()
    if t in ("1", "true", "yes", "on"):
        return True
    if t in ("0", "false", "no", "off"):
        return False
    raise ConfigError(f"not a boolean: {text!r}")


@dataclass
class ExperimentConfig:
    kind: str = "coverage"
    n: int = 10
    path: str | None = None
    params: dict = field(default_factory=dict)
    default_p: float = 0.1
    constraint: str = "TS"
    budgets: list = field(default_factory=lambda: [3])
    methods: list = field(default_factory=lambda: ["AG"])
    style: str = "AS"
    epsilons: list = field(default_factory=lambda: [0.3])
    ks: list = field(default_factory=lambda: [2])
    algorithms: list = field(default_factory=lambda: ["greedy_F", "greedy_f"])
    repetitions: int = 1
    seed: int = 0
    lazy: bool = True
    record_time: bool = False
    dump_solutions: bool = False

    def validate(self) -> "ExperimentConfig":
        if self.kind not in KINDS:
            raise ConfigError(f"objective kind must be one of {KINDS}, got {self.kind!r}")
        if self.constraint not in ("TS", "IS"):
            raise ConfigError(f"constraint type must be TS or IS, got {self.constraint!r}")
        for name in ("budgets", "methods", "epsilons", "ks", "algorithms"):
            if not getattr(self, name):
                raise ConfigError(f"sweep list {name!r} is empty")
        bad = [a for a in self.algorithms if a not in ALGORITHMS]
        if bad:
            raise ConfigError(f"unknown algorithm {bad[0]!r}; expected one of {ALGORITHMS}")
        for m in self.methods:
            if m.lower() != "none":
                NoiseSpec(m, self.style, 0.0)
        for e in self.epsilons:
            if not 0.0 <= e <= 1.0:
                raise ConfigError(f"epsilon must lie in [0, 1], got {e}")
        if any(k < 1 for k in self.ks) or any(b < 1 for b in self.budgets):
            raise ConfigError("k and budget values must be positive")
        if self.repetitions < 1:
            raise ConfigError("repetitions must be >= 1")
        return self

    @classmethod
    def from_ini(cls, text: str) -> "ExperimentConfig":
        cp = configparser.ConfigParser(inline_comment_prefixes=(";", "#"))
        try:
            cp.read_string(text)
        except configparser.Error as exc:
            raise ConfigError(f"malformed config: {exc}") from None
        known = {"objective", "constraint", "noise", "sweep", "run"}
        extra = set(cp.sections()) - known
        if extra:
            raise ConfigError(f"unknown config section(s): {sorted(extra)}")
        cfg = cls()
        try:
            obj = cp["objective"] if cp.has_section("objective") else {}
            cfg.kind = obj.get("kind", cfg.kind).strip().lower()
            cfg.n = int(obj.get("n", cfg.n))
            cfg.path = obj.get("path") or None
            cfg.default_p = float(obj.get("default_p", cfg.default_p))
            gen = _GEN_KEYS.get(cfg.kind, {})
            for key, value in obj.items():
                if key in ("kind", "n", "path", "default_p"):
                    continue
                conv = gen.get(key) or gen.get(key.upper())
                if conv is None:
                    raise ConfigError(f"unknown objective key {key!r} for kind {cfg.kind!r}")
                cfg.params[key if key in gen else key.upper()] = conv(value)
            con = cp["constraint"] if cp.has_section("constraint") else {}
            cfg.constraint = con.get("type", cfg.constraint).strip().upper()
            if "budget" in con:
                cfg.budgets = _list(con["budget"], int)
            noise = cp["noise"] if cp.has_section("noise") else {}
            if "methods" in noise:
                cfg.methods = _list(noise["methods"], str)
            cfg.style = noise.get("style", cfg.style).strip()
            if "epsilon" in noise:
                cfg.epsilons = _list(noise["epsilon"], float)
            sweep = cp["sweep"] if cp.has_section("sweep") else {}
            if "k" in sweep:
                cfg.ks = _list(sweep["k"], int)
            run = cp["run"] if cp.has_section("run") else {}
            if "algorithms" in run:
                cfg.algorithms = _list(run["algorithms"], str)
            cfg.repetitions = int(run.get("repetitions", cfg.repetitions))
            cfg.seed = int(run.get("seed", cfg.seed))
            cfg.lazy = _bool(run.get("lazy", "true"))
            cfg.record_time = _bool(run.get("record_time", "false"))
            cfg.dump_solutions = _bool(run.get("dump_solutions", "false"))
        except ValueError as exc:
            if isinstance(exc, ConfigError):
                raise
            raise ConfigError(f"bad config value: {exc}") from None
        return cfg.validate()

    @classmethod
    def load(cls, path) -> "ExperimentConfig":
        with open(path, encoding="utf-8") as fh:
            return cls.from_ini(fh.read())


# --------------------------------------------------------------------------


def build_instance(cfg: ExperimentConfig, k_max: int):
    """The fixed base instance shared by all repetitions (seeded from the base seed)."""
    seed = derive_seed(cfg.seed, "instance")
    p = dict(cfg.params)
    if cfg.kind == "coverage":
        if cfg.path:
            return CoverageObjective.load(cfg.path)
        return gen_synthetic("coverage", dict(n=cfg.n, k=k_max, **p), seed)
    if cfg.kind == "sensor":
        if cfg.path:
            return load_sensor_csv(cfg.path, bins=p.get("bins", 5))
        if "records" in p:
            p["n_records"] = p.pop("records")
        return gen_synthetic("sensor", dict(n_locations=cfg.n, k=k_max, **p), seed)
    if cfg.path:
        return load_edge_list(cfg.path, k=None, default_p=cfg.default_p, R=p.get("R", 64),
                              sample_seed=derive_seed(cfg.seed, "samples"))
    return gen_synthetic("cascade", dict(n_nodes=cfg.n, k=k_max, **p), seed)


def make_constraint(kind: str, k: int, budget: int) -> Constraint:
    return TotalSize(k, budget) if kind == "TS" else IndividualSize([budget] * k)


@dataclass
class Task:
    method: str
    k: int
    epsilon: float
    budget: int
    rep: int


def _row(task, cfg, algorithm, **vals):
    row = {c: "" for c in CSV_COLUMNS}
    row.update(method=task.method, style=cfg.style, k=task.k, epsilon=fmt(task.epsilon),
               constraint=cfg.constraint, budget=task.budget, algorithm=algorithm, rep=task.rep)
    row.update(vals)
    return row


def run_task(cfg: ExperimentConfig, instance, task: Task) -> list[dict]:
    f = objective_for(instance, task.k)
    gs = f.ground_set
    rep_seed = cfg.seed + task.rep
    c = make_constraint(cfg.constraint, task.k, task.budget)
    try:
        c.check(gs)
    except InfeasibleConstraintError as exc:
        return [_row(task, cfg, a, error=str(exc)) for a in cfg.algorithms]
    if task.method.lower() == "none":
        F = f
    else:
        spec = NoiseSpec(task.method, cfg.style, task.epsilon, derive_seed(rep_seed, "noise"))
        F = make_noisy(f, gs, spec, c)
    rows = []
    for alg in cfg.algorithms:
        t0 = time.perf_counter()
        evals = ""
        try:
            if alg == "greedy_F":
                tr = greedy(F, gs, c, lazy=cfg.lazy)
                x, evals = tr.solution, tr.eval_count
            elif alg == "greedy_f":
                tr = greedy(f, gs, c, lazy=cfg.lazy)
                x, evals = tr.solution, tr.eval_count
            elif alg == "random":
                x = baseline_random(gs, c, derive_seed(rep_seed, "random"))
            else:
                if not isinstance(instance, CascadeModel):
                    raise ConfigError("degree baseline needs a cascade graph")
                if cfg.constraint != "TS":
                    raise ConfigError("degree baseline supports the TS constraint only")
                x = baseline_degree(instance.graph, gs, task.budget, derive_seed(rep_seed, "degree"))
        except KSubError as exc:
            rows.append(_row(task, cfg, alg, error=str(exc)))
            continue
        wall = time.perf_counter() - t0
        rows.append(_row(task, cfg, alg, F_value=fmt(F(x)), f_value=fmt(f(x)), eval_count=evals,
                         wall_time=fmt(wall) if cfg.record_time else "",
                         solution=" ".join(map(str, x.labels)) if cfg.dump_solutions else ""))
    return rows


def tasks_of(cfg: ExperimentConfig) -> list[Task]:
    return [Task(m, k, e, b, r) for m, k, e, b, r in itertools.product(
        cfg.methods, cfg.ks, cfg.epsilons, cfg.budgets, range(cfg.repetitions))]


def aggregate(rows: list[dict]) -> list[dict]:
    """Mean and population std of F/f values per (sweep point, algorithm)."""
    groups: dict[tuple, list[dict]] = {}
    for r in rows:
        if r["error"]:
            continue
        key = tuple(r[c] for c in ("method", "style", "k", "epsilon", "constraint", "budget",
                                   "algorithm"))
        groups.setdefault(key, []).append(r)
    out = []
    for key, rs in groups.items():
        for agg, fn in (("mean", statistics.fmean), ("std", statistics.pstdev)):
            row = dict(zip(("method", "style", "k", "epsilon", "constraint", "budget",
                            "algorithm"), key))
            row.update({c: "" for c in CSV_COLUMNS if c not in row})
            row["agg"] = agg
            for col in ("F_value", "f_value"):
                row[col] = fmt(fn([float(r[col]) for r in rs]))
            evals = [r["eval_count"] for r in rs if r["eval_count"] != ""]
            if evals:
                row["eval_count"] = fmt(fn([float(e) for e in evals]))
            out.append(row)
    return out


def run_experiment(cfg: ExperimentConfig, threads: int = 1) -> list[dict]:
    """All per-run rows in (sweep point, rep) order, followed by aggregate rows."""
    cfg.validate()
    instance = build_instance(cfg, max(cfg.ks))
    tasks = tasks_of(cfg)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda t: run_task(cfg, instance, t), tasks))
    else:
        results = [run_task(cfg, instance, t) for t in tasks]
    rows = [r for rs in results for r in rs]
    return rows + aggregate(rows)


def to_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    return buf.getvalue()


def mean_value(rows: list[dict], method: str, algorithm: str, column: str = "F_value") -> float:
    for r in rows:
        if r["agg"] == "mean" and r["method"] == method and r["algorithm"] == algorithm:
            return float(r[column])
    return math.nan
