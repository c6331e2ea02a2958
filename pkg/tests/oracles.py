"""Independent reference implementations used as test oracles.

None of these import the package's algorithms; they are deliberately naive.
"""

import itertools
import math
from collections import Counter
from fractions import Fraction


def naive_greedy(fn, n, k, groups, caps):
    """Textbook scan: every iteration tries every (free element, open dimension)."""
    labels = [0] * n
    load = {g: 0 for g in range(len(groups))}
    group_of = {d: g for g, ds in enumerate(groups) for d in ds}
    picks = []
    for _ in range(sum(caps)):
        base = fn(tuple(labels))
        best = None
        for e in range(n):
            if labels[e]:
                continue
            for i in range(1, k + 1):
                if load[group_of[i]] >= caps[group_of[i]]:
                    continue
                trial = list(labels)
                trial[e] = i
                g = fn(tuple(trial)) - base
                if best is None or g > best[0]:
                    best = (g, e, i)
        _, e, i = best
        labels[e] = i
        load[group_of[i]] += 1
        picks.append((e, i, fn(tuple(labels))))
    return picks, tuple(labels)


def naive_optimum(fn, n, k, groups, caps):
    best = None
    group_of = {d: g for g, ds in enumerate(groups) for d in ds}
    for labels in itertools.product(range(k + 1), repeat=n):
        load = Counter(group_of[v] for v in labels if v)
        if any(load[g] > c for g, c in enumerate(caps)):
            continue
        v = fn(labels)
        if best is None or v > best[0]:
            best = (v, labels)
    return best


def precedes(x, y):
    return all(a == 0 or a == b for a, b in zip(x, y))


def naive_k_submodular(fn, n, k, tol=1e-9):
    """Definition check over *all* comparable pairs, not just covering ones."""
    states = list(itertools.product(range(k + 1), repeat=n))
    val = {s: fn(s) for s in states}

    def add(s, e, i):
        t = list(s)
        t[e] = i
        return tuple(t)

    for x in states:
        for y in states:
            if not precedes(x, y):
                continue
            for u in range(n):
                if y[u]:
                    continue
                for i in range(1, k + 1):
                    if val[add(x, u, i)] - val[x] < val[add(y, u, i)] - val[y] - tol:
                        return False
    for x in states:
        for u in range(n):
            if x[u]:
                continue
            for i in range(1, k + 1):
                for j in range(1, k + 1):
                    if i != j and (val[add(x, u, i)] - val[x]) + (val[add(x, u, j)] - val[x]) < -tol:
                        return False
    return True


def plug_in_entropy(rows):
    """Shannon entropy (nats) of the empirical distribution of ``rows`` (tuples)."""
    counts = Counter(rows)
    total = sum(counts.values())
    return -sum(c / total * math.log(c / total) for c in counts.values())


def coverage_value(sets, weights, labels):
    covered = set()
    for e, v in enumerate(labels):
        if v:
            covered |= set(sets[e][v - 1])
    return sum(weights[u] for u in covered)


def exact_bound(kind, eps, B=1):
    """Ratios evaluated in exact rational arithmetic (or high precision for exp)."""
    e = Fraction(eps).limit_denominator(10 ** 6)
    a = (1 - e) / (1 + e)
    if kind == "as_TS":
        return (1 - e) ** 2 / (2 * (1 - e + e * B) * (1 + e))
    if kind == "as_IS":
        return (1 - e) ** 2 / ((3 - 3 * e + 2 * e * B) * (1 + e))
    if kind == "adr_TS":
        return (1 - e) / 2
    if kind == "adr_IS":
        return (1 - e) / (3 + e)
    if kind == "on_f_TS":
        return a / 2
    if kind == "on_f_IS":
        return a / 3
    if kind == "horel":
        if e == 1:
            return Fraction(0)
        return (1 / (1 + 4 * B * e / (1 - e) ** 2)) * (1 - a ** (2 * B) * (1 - Fraction(1, B)) ** B)
    raise KeyError(kind)


def reach_bfs(adj, seeds):
    seen = set(seeds)
    stack = list(seeds)
    while stack:
        u = stack.pop()
        for v in adj.get(u, ()):
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return seen
