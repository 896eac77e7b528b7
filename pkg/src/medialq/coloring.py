"""Counting quandle colorings of diagrams.

The solver compiles a diagram into a static plan: pick a seed arc, derive every
arc that the crossing relations force, check relations whose arcs are all
known, and repeat. Execution expands all seed values at once as rows of a
numpy array, so the search runs as a handful of vectorised table lookups.
"""

from __future__ import annotations

import itertools
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .quandle import SizeLimitExceeded

BRUTE_FORCE_LIMIT = 10**7
CHUNK_ROWS = 1 << 20


@dataclass
class EnhancedPoly:
    """Sparse map image size -> number of colorings."""

    coeffs: dict = field(default_factory=dict)

    def total(self):
        return sum(self.coeffs.values())

    def __eq__(self, other):
        if isinstance(other, dict):
            other = EnhancedPoly(other)
        return isinstance(other, EnhancedPoly) and self.coeffs == other.coeffs

    def to_json(self):
        return {str(k): v for k, v in sorted(self.coeffs.items())}

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k, v in sorted(self.coeffs.items()):
            q = "q" if k == 1 else f"q^{k}"
            terms.append(q if v == 1 else f"{v}{q}")
        return " + ".join(terms)


@dataclass(frozen=True)
class Plan:
    arcs: tuple
    # each level: (seed index or None, derivations, checks)
    # derivation: (target, a, b, table) with target = table[a, b]; table 0 = op, 1 = inv
    levels: tuple


def _crossing_table(L, index):
    return [(index[c.under_in], index[c.over], index[c.under_out], c.sign) for c in L.crossings]


def make_plan(L):
    arcs = tuple(L.arcs)
    index = {a: i for i, a in enumerate(arcs)}
    xs = _crossing_table(L, index)
    known = [False] * len(arcs)
    pending = set(range(len(xs)))
    touching = [[] for _ in arcs]
    for k, (i, o, u, _) in enumerate(xs):
        for a in {i, o, u}:
            touching[a].append(k)

    def propagate(start):
        derived, checks, queue = [], [], [start]
        while queue:
            a = queue.pop()
            for k in touching[a]:
                if k not in pending:
                    continue
                i, o, u, s = xs[k]
                if not known[o]:
                    continue
                if known[i] and known[u]:
                    pending.discard(k)
                    checks.append(k)
                elif known[i]:
                    derived.append((u, i, o, 0 if s > 0 else 1))
                    known[u] = True
                    pending.discard(k)
                    queue.append(u)
                elif known[u]:
                    derived.append((i, u, o, 1 if s > 0 else 0))
                    known[i] = True
                    pending.discard(k)
                    queue.append(i)
        return tuple(derived), tuple(checks)

    def pick_seed():
        best, best_score = None, -1
        for a in range(len(arcs)):
            if known[a]:
                continue
            score = sum(
                1 for k in touching[a]
                if k in pending and xs[k][1] == a and (known[xs[k][0]] or known[xs[k][2]])
            )
            if score > best_score:
                best, best_score = a, score
        return best

    levels = []
    while not all(known):
        seed = pick_seed()
        known[seed] = True
        derived, checks = propagate(seed)
        levels.append((seed, derived, checks))
    return Plan(arcs, tuple(levels)), xs


def _run_level(vals, level, X, xs):
    seed, derived, checks = level
    n = X.n
    rows = vals.shape[0]
    vals = np.repeat(vals, n, axis=0)
    vals[:, seed] = np.tile(np.arange(n), rows)
    tables = (X.op_array, X.inv_array)
    for target, a, b, t in derived:
        vals[:, target] = tables[t][vals[:, a], vals[:, b]]
    if checks:
        keep = np.ones(vals.shape[0], dtype=bool)
        P, I = tables
        for k in checks:
            i, o, u, s = xs[k]
            table = P if s > 0 else I
            keep &= table[vals[:, i], vals[:, o]] == vals[:, u]
        vals = vals[keep]
    return vals


def _iter_solutions(plan, xs, X, first_values=None):
    """Yield arrays of complete colorings (rows) in lexicographic seed order."""
    levels = plan.levels
    width = len(plan.arcs)

    def rec(vals, depth):
        if depth == len(levels):
            if len(vals):
                yield vals
            return
        if depth == 0 and first_values is not None:
            seed, derived, checks = levels[0]
            parts = []
            for v in first_values:
                part = np.zeros((1, width), dtype=np.int64)
                part[0, seed] = v
                parts.append(_finish_level(part, levels[0], X, xs))
            nxt = np.concatenate(parts) if parts else np.zeros((0, width), dtype=np.int64)
        else:
            nxt = _run_level(vals, levels[depth], X, xs)
        if len(nxt) == 0:
            return
        step = max(1, CHUNK_ROWS // max(1, X.n))
        for s in range(0, len(nxt), step):
            yield from rec(nxt[s:s + step], depth + 1)

    yield from rec(np.zeros((1, width), dtype=np.int64), 0)


def _finish_level(vals, level, X, xs):
    """Run a level's derivations and checks with the seed already set."""
    seed, derived, checks = level
    tables = (X.op_array, X.inv_array)
    for target, a, b, t in derived:
        vals[:, target] = tables[t][vals[:, a], vals[:, b]]
    for k in checks:
        i, o, u, s = xs[k]
        table = tables[0] if s > 0 else tables[1]
        vals = vals[table[vals[:, i], vals[:, o]] == vals[:, u]]
    return vals


def solution_array(L, X, first_values=None):
    """All colorings as an int array with one column per arc (``L.arcs`` order)."""
    plan, xs = make_plan(L)
    if not plan.levels:
        return np.zeros((1, 0), dtype=np.int64)
    parts = list(_iter_solutions(plan, xs, X, first_values))
    if not parts:
        return np.zeros((0, len(plan.arcs)), dtype=np.int64)
    out = np.concatenate(parts)
    # report in lexicographic order of the arc columns
    order = np.lexsort(out.T[::-1])
    return out[order]


def _worker_count(workers):
    if workers is None:
        workers = int(os.environ.get("MEDIALQ_WORKERS", "1") or 1)
    return max(1, workers)


def _partitioned(L, X, workers, fn):
    """Split the first seed's values across processes and merge the results."""
    chunks = [list(range(X.n))[w::workers] for w in range(workers)]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, [(L, X, c) for c in chunks if c]))


def _count_chunk(args):
    L, X, values = args
    return len(solution_array(L, X, values))


def _phi_chunk(args):
    L, X, values = args
    return _image_sizes(solution_array(L, X, values))


def enumerate_colorings(L, X):
    arr = solution_array(L, X)
    return [dict(zip(L.arcs, map(int, row))) for row in arr]


def count_colorings(L, X, workers=None):
    workers = _worker_count(workers)
    if workers > 1 and L.arcs and X.n > 1:
        return sum(_partitioned(L, X, workers, _count_chunk))
    return len(solution_array(L, X))


def _image_sizes(arr):
    if arr.shape[1] == 0:
        return {0: len(arr)} if len(arr) else {}
    s = np.sort(arr, axis=1)
    sizes = 1 + (np.diff(s, axis=1) != 0).sum(axis=1)
    ks, cs = np.unique(sizes, return_counts=True)
    return {int(k): int(c) for k, c in zip(ks, cs)}


def enhanced_polynomial(L, X, workers=None):
    workers = _worker_count(workers)
    if workers > 1 and L.arcs and X.n > 1:
        total = {}
        for part in _partitioned(L, X, workers, _phi_chunk):
            for k, v in part.items():
                total[k] = total.get(k, 0) + v
        return EnhancedPoly(dict(sorted(total.items())))
    return EnhancedPoly(_image_sizes(solution_array(L, X)))


def phi_from_colorings(colorings):
    out = {}
    for f in colorings:
        k = len(set(f.values()))
        out[k] = out.get(k, 0) + 1
    return EnhancedPoly(dict(sorted(out.items())))


def is_coloring(L, X, f):
    for c in L.crossings:
        a, b = f[c.under_in], f[c.over]
        expect = X.op[a][b] if c.sign > 0 else X.inv[a][b]
        if f[c.under_out] != expect:
            return False
    return True


def brute_force_colorings(L, X):
    """Reference oracle: test every assignment against every relation."""
    if X.n ** len(L.arcs) > BRUTE_FORCE_LIMIT:
        raise SizeLimitExceeded(f"{X.n}^{len(L.arcs)} assignments exceed the brute-force guard")
    out = []
    for values in itertools.product(range(X.n), repeat=len(L.arcs)):
        f = dict(zip(L.arcs, values))
        if is_coloring(L, X, f):
            out.append(f)
    return out
