"""Readers and writers for sensor logs and edge lists.

Sensor CSV::

    location,type,timestamp,value
    3,1,2004-02-28 00:59:16,19.98

one reading per line; a record is one timestamp, and only timestamps that
carry a reading for every (type, location) column are kept.

Edge list::

    # src dst p_1 ... p_k
    12 7 0.10 0.03

whitespace separated; probabilities are optional per line and default to a
constant for every topic.
"""

from __future__ import annotations

import csv
import logging
import re

import numpy as np

from ..core import KSubError
from .cascade import CascadeModel, DirectedGraph
from .entropy import SensorModel, quantize

log = logging.getLogger(__name__)

SENSOR_HEADER = ["location", "type", "timestamp", "value"]
_NUMBER = re.compile(r"^[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?$")


class ParseError(KSubError, ValueError):
    def __init__(self, message: str, path=None, line: int | None = None):
        where = f"{path}:{line}: " if line is not None else (f"{path}: " if path else "")
        super().__init__(where + message)
        self.line = line


def _number(text: str, path, line: int) -> float:
    text = text.strip()
    # float() would also accept "nan", "inf" and underscores
    if not _NUMBER.match(text):
        raise ParseError(f"not a decimal number: {text!r}", path, line)
    return float(text)


def _dense_ids(ids):
    """Map external ids to 0..m-1: numeric order if all are integers, else first appearance."""
    unique = list(dict.fromkeys(ids))
    try:
        unique = sorted(unique, key=int)
    except ValueError:
        pass
    return unique, {v: j for j, v in enumerate(unique)}


def load_sensor_csv(path, bins: int = 5) -> SensorModel:
    rows = []
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip() for h in header] != SENSOR_HEADER:
            raise ParseError(f"expected header {','.join(SENSOR_HEADER)}", path, 1)
        for row in reader:
            line = reader.line_num
            if not row or all(not c.strip() for c in row):
                continue
            if len(row) != 4:
                raise ParseError(f"expected 4 fields, got {len(row)}", path, line)
            loc, typ, ts, val = (c.strip() for c in row)
            try:
                typ = int(typ)
            except ValueError:
                raise ParseError(f"sensor type must be an integer, got {typ!r}", path, line) from None
            if typ < 1:
                raise ParseError(f"sensor type must be >= 1, got {typ}", path, line)
            rows.append((loc, typ, ts, _number(val, path, line), line))
    if not rows:
        raise ParseError("no readings in data section", path)

    locations, loc_index = _dense_ids(r[0] for r in rows)
    types = sorted({r[1] for r in rows})
    type_index = {t: j for j, t in enumerate(types)}
    stamps = list(dict.fromkeys(r[2] for r in rows))
    stamp_index = {t: j for j, t in enumerate(stamps)}
    n, k = len(locations), len(types)
    table = np.full((len(stamps), n * k), np.nan)
    for loc, typ, ts, val, line in rows:
        t, c = stamp_index[ts], type_index[typ] * n + loc_index[loc]
        if not np.isnan(table[t, c]):
            raise ParseError(f"duplicate reading for location {loc}, type {typ} at {ts}", path, line)
        table[t, c] = val
    complete = ~np.isnan(table).any(axis=1)
    if not complete.any():
        raise ParseError("no timestamp has a reading for every (type, location) column", path)
    if not complete.all():
        log.warning("dropped %d incomplete records from %s", int((~complete).sum()), path)
    raw = table[complete]
    kept = [s for s, keep in zip(stamps, complete) if keep]
    return SensorModel(locations, types, kept, raw, quantize(raw, bins), bins)


def save_sensor_csv(model: SensorModel, path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(SENSOR_HEADER)
        for t, stamp in enumerate(model.timestamps):
            for ti, typ in enumerate(model.type_ids):
                for u, loc in enumerate(model.location_ids):
                    w.writerow([loc, typ, stamp, repr(float(model.raw[t, ti * model.n + u]))])


def load_edge_list(path, k: int | None = None, default_p: float = 0.1, R: int = 64,
                   sample_seed: int = 0) -> CascadeModel:
    """Parse ``src dst p_1 .. p_k`` lines into a :class:`CascadeModel`."""
    edges = []
    with open(path, encoding="utf-8") as fh:
        for line, text in enumerate(fh, start=1):
            text = text.split("#", 1)[0].strip()
            if not text:
                continue
            fields = text.split()
            if len(fields) < 2:
                raise ParseError("edge needs a source and a destination", path, line)
            probs = [_number(p, path, line) for p in fields[2:]]
            for p in probs:
                if not 0.0 <= p <= 1.0:
                    raise ParseError(f"probability {p} outside [0, 1]", path, line)
            edges.append((fields[0], fields[1], probs, line))
    if not edges:
        raise ParseError("no edges in data section", path)
    given = {len(e[2]) for e in edges} - {0}
    if k is None:
        k = max(given, default=1)
    for _, _, probs, line in edges:
        if len(probs) > k:
            raise ParseError(f"unknown topic index {len(probs)} (model has k={k})", path, line)
        if 0 < len(probs) < k:
            raise ParseError(f"expected {k} topic probabilities, got {len(probs)}", path, line)
    ids, index = _dense_ids(x for e in edges for x in e[:2])
    src = np.array([index[e[0]] for e in edges], dtype=np.int64)
    dst = np.array([index[e[1]] for e in edges], dtype=np.int64)
    probs = np.array([e[2] if e[2] else [default_p] * k for e in edges], dtype=float)
    graph = DirectedGraph(len(ids), src, dst, node_ids=ids)
    return CascadeModel(graph, probs, R=R, sample_seed=sample_seed)


def save_edge_list(model: CascadeModel, path) -> None:
    g = model.graph
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("# src dst " + " ".join(f"p_{i + 1}" for i in range(model.k)) + "\n")
        for s, d, p in zip(g.src, g.dst, model.probabilities):
            fh.write(f"{g.node_ids[s]} {g.node_ids[d]} " + " ".join(repr(float(v)) for v in p) + "\n")
