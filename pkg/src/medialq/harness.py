"""Batch checks of the indistinguishability claims, reported as verdicts."""

from __future__ import annotations

import itertools
import json
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

from .coloring import (
    brute_force_colorings,
    count_colorings,
    enhanced_polynomial,
    enumerate_colorings,
    phi_from_colorings,
)
from .families import (
    as_roles,
    gen_allen_swenberg,
    gen_generalized_as,
    gen_hopf,
    gen_kom_knot,
    gen_l2h,
    gen_trefoil,
    gen_two_component_lom,
)
from .quandle import alexander_quandle, build_quandle, enumerate_quandles, has_tilde_equivalence, is_medial
from .tangle import check_theorem_5_1, example_strand, random_lom, tangle_t

PAPER_TREFOIL = {"count": 3, "phi": {1: 3}}


@dataclass
class UniverseConfig:
    max_order: int = 4
    alexander_max: int = 8
    include_polynomial: bool = True


@dataclass
class Verdict:
    claim: str
    universe: str
    passed: bool
    counterexamples: list = field(default_factory=list)
    stats: dict = field(default_factory=dict)

    def to_json(self):
        d = asdict(self)
        d["pass"] = d.pop("passed")
        return d

    def summary(self):
        mark = "PASS" if self.passed else "FAIL"
        return f"{self.claim:<11} {mark}  cases={self.stats.get('total_cases', 0):<5} {self.universe}"


def workers():
    return max(1, int(os.environ.get("MEDIALQ_WORKERS", "1") or 1))


def _fan_out(fn, items):
    """Map over items, in worker processes when MEDIALQ_WORKERS > 1; order is kept."""
    items = list(items)
    w = workers()
    if w == 1 or len(items) < 2:
        return [fn(i) for i in items]
    with ProcessPoolExecutor(max_workers=w) as ex:
        return list(ex.map(fn, items))


# --- universes ------------------------------------------------------------------


def alexander_catalog(max_order=8, include_polynomial=True):
    """Scalar Alexander quandles Z_n with t a unit other than 1, plus two quotient rings."""
    out = []
    for n in range(2, max_order + 1):
        for t in range(2, n):
            if math.gcd(t, n) == 1:
                out.append(alexander_quandle(n, [(-t) % n, 1]))
    if include_polynomial:
        out += [alexander_quandle(2, [1, 1, 1]), alexander_quandle(3, [1, 0, 1])]
    return out


def all_alexander(max_order=8):
    """Every Z_n[t]/(h) with h monic, h(0) a unit, and n^deg(h) <= max_order."""
    out = []
    for n in range(2, max_order + 1):
        d = 1
        while n**d <= max_order:
            for lower in itertools.product(range(n), repeat=d):
                if math.gcd(lower[0], n) == 1:
                    out.append(alexander_quandle(n, list(lower) + [1]))
            d += 1
    return out


def default_universe(cfg=None):
    cfg = cfg or UniverseConfig()
    qs = [q for n in range(1, cfg.max_order + 1) for q in enumerate_quandles(n)]
    return qs + alexander_catalog(cfg.alexander_max, cfg.include_polynomial)


def medial_universe(cfg=None, tilde=False):
    qs = [q for q in default_universe(cfg) if is_medial(q)]
    if tilde:
        qs = [q for q in qs if has_tilde_equivalence(q)]
    return qs


def _describe(qs):
    orders = sorted({q.n for q in qs})
    return f"{len(qs)} quandles of orders {orders}"


def _phi(L, Q):
    return enhanced_polynomial(L, Q).coeffs


# --- claims ---------------------------------------------------------------------


def _prop31_cell(args):
    Q, n_max = args
    H = gen_l2h()
    ref = _phi(H, Q)
    bad = []
    for i in range(1, n_max + 1):
        A = gen_allen_swenberg(i)
        got = _phi(A, Q)
        if got != ref:
            bad.append({"quandle": Q.name, "A": i, "phi_A": got, "phi_L2H": ref})
            continue
        roles = as_roles(A)
        for f in enumerate_colorings(A, Q):
            if len({f[a] for a in roles["x"]}) != 1 or len({f[a] for a in roles["middle"]}) != 1:
                bad.append({"quandle": Q.name, "A": i, "non_constant_coloring": f})
                break
    return bad


def verify_prop_3_1(max_order=4, n_max=2, alexander_max=8):
    t0 = time.perf_counter()
    enumerated = [q for n in range(1, max_order + 1)
                  for q in enumerate_quandles(n, "medial_with_tilde_equivalence")]
    qs = enumerated + [q for q in all_alexander(alexander_max) if has_tilde_equivalence(q)]
    bad = [b for part in _fan_out(_prop31_cell, [(q, n_max) for q in qs]) for b in part]
    return Verdict(
        "prop3.1", f"{_describe(qs)}, medial with ~ an equivalence; A_1..A_{n_max} vs L2H",
        not bad, bad, {"total_cases": len(qs) * n_max, "seconds": time.perf_counter() - t0},
    )


def _theorem_cell(args):
    S, Q = args
    r = check_theorem_5_1(S, Q)
    return [] if r.ok else [{"strand": S.diagram.name, "quandle": Q.name, "colorings": r.violations[:3]}]


def verify_lemma_1(quandles=None):
    t0 = time.perf_counter()
    qs = quandles if quandles is not None else medial_universe()
    T = tangle_t()
    bad = [b for part in _fan_out(_theorem_cell, [(T, q) for q in qs]) for b in part]
    return Verdict("lemma1", f"tangle T over {_describe(qs)} (medial)", not bad, bad,
                   {"total_cases": len(qs), "seconds": time.perf_counter() - t0})


def verify_theorem_5_1(strands=20, moves=6, seed=1, quandles=None):
    t0 = time.perf_counter()
    qs = quandles if quandles is not None else medial_universe()
    pool = [tangle_t()] + [random_lom(moves, seed + k) for k in range(strands)]
    cells = [(S, q) for S in pool for q in qs]
    bad = [b for part in _fan_out(_theorem_cell, cells) for b in part]
    return Verdict("thm5.1", f"T + {strands} random strands ({moves} moves, seeds {seed}..{seed + strands - 1}) over {_describe(qs)}",
                   not bad, bad, {"total_cases": len(cells), "seconds": time.perf_counter() - t0})


def _prop44_cell(Q):
    A = gen_allen_swenberg(1)
    roles = as_roles(A)
    bad = []
    for f in enumerate_colorings(A, Q):
        xs = {f[a] for a in roles["x"]}
        if len(xs) != 1:
            bad.append({"quandle": Q.name, "x_values": sorted(xs)})
            break
    return bad


def verify_prop_4_4(quandles=None):
    """Every coloring of A_1 is constant along the x component."""
    t0 = time.perf_counter()
    qs = quandles if quandles is not None else medial_universe(tilde=True)
    bad = [b for part in _fan_out(_prop44_cell, qs) for b in part]
    return Verdict("prop4.4", f"A_1 over {_describe(qs)}", not bad, bad,
                   {"total_cases": len(qs), "seconds": time.perf_counter() - t0})


def _prop45_cell(args):
    Q, n_max = args
    bad = []
    for i in range(1, n_max + 1):
        A = gen_allen_swenberg(i)
        roles = as_roles(A)
        for f in enumerate_colorings(A, Q):
            if len({f[a] for a in roles["middle"]}) != 1:
                bad.append({"quandle": Q.name, "A": i})
                break
    return bad


def verify_prop_4_5(n_max=2, quandles=None):
    """The middle component of A_k takes a single color in every coloring."""
    t0 = time.perf_counter()
    qs = quandles if quandles is not None else medial_universe(tilde=True)
    bad = [b for part in _fan_out(_prop45_cell, [(q, n_max) for q in qs]) for b in part]
    return Verdict("prop4.5", f"A_1..A_{n_max} over {_describe(qs)}", not bad, bad,
                   {"total_cases": len(qs) * n_max, "seconds": time.perf_counter() - t0})


def _section7_cell(args):
    which, L, Q = args
    got = _phi(L, Q)
    if which == "7.1":
        ref = {1: Q.n}
    elif which == "7.2":
        ref = _phi(gen_hopf(), Q)
    else:
        ref = _phi(gen_l2h(), Q)
    return [] if got == ref else [{"link": L.name, "quandle": Q.name, "phi": got, "expected": ref}]


def section7_links(which, strands=None):
    if which == "7.1":
        return [gen_kom_knot(S) for S in (strands or [example_strand(), tangle_t(), random_lom(6, 2)])]
    if which == "7.2":
        pairs = strands or [(tangle_t(), tangle_t()), (example_strand(), random_lom(5, 11))]
        return [gen_two_component_lom(a, b) for a, b in pairs]
    groups = strands or [[tangle_t(), random_lom(4, 3)], [random_lom(3, 8), tangle_t(), tangle_t(), random_lom(5, 9)]]
    return [gen_generalized_as(g) for g in groups]


def verify_section_7(which, strands=None, quandles=None):
    t0 = time.perf_counter()
    if quandles is None:
        quandles = medial_universe(tilde=which != "7.1")
    links = section7_links(which, strands)
    cells = [(which, L, q) for L in links for q in quandles]
    bad = [b for part in _fan_out(_section7_cell, cells) for b in part]
    claim = "prop" + which
    target = {"7.1": "unknot (|X| q)", "7.2": "Hopf link", "7.3": "L2H"}[which]
    return Verdict(claim, f"{len(links)} links vs {target} over {_describe(quandles)}",
                   not bad, bad, {"total_cases": len(cells), "seconds": time.perf_counter() - t0})


def erratum_report():
    t0 = time.perf_counter()
    X = build_quandle([[(2 * x - y) % 3 for y in range(3)] for x in range(3)], 3, "Z3(2x-y)")
    L = gen_trefoil()
    oracle = brute_force_colorings(L, X)
    solver = enumerate_colorings(L, X)
    key = lambda f: tuple(sorted(f.items()))
    agree = sorted(map(key, oracle)) == sorted(map(key, solver))
    phi = phi_from_colorings(oracle).coeffs
    stats = {
        "total_cases": 1,
        "observed_count": len(oracle),
        "observed_phi": phi,
        "solver_count": count_colorings(L, X),
        "solver_phi": enhanced_polynomial(L, X).coeffs,
        "stated_count": PAPER_TREFOIL["count"],
        "stated_phi": PAPER_TREFOIL["phi"],
        "matches_stated": len(oracle) == PAPER_TREFOIL["count"] and phi == PAPER_TREFOIL["phi"],
        "example_nonconstant": next((f for f in oracle if len(set(f.values())) > 1), None),
        "seconds": time.perf_counter() - t0,
    }
    bad = [] if agree else [{"oracle": len(oracle), "solver": len(solver)}]
    return Verdict("erratum2.1", "trefoil over Z3 with x*y = 2x-y", agree, bad, stats)


CLAIMS = {
    "erratum2.1": erratum_report,
    "prop3.1": verify_prop_3_1,
    "lemma1": verify_lemma_1,
    "prop4.4": verify_prop_4_4,
    "prop4.5": verify_prop_4_5,
    "thm5.1": verify_theorem_5_1,
    "prop7.1": lambda: verify_section_7("7.1"),
    "prop7.2": lambda: verify_section_7("7.2"),
    "prop7.3": lambda: verify_section_7("7.3"),
}


def verify_all():
    return [fn() for fn in CLAIMS.values()]


def verdicts_json(verdicts):
    def clean(o):
        if isinstance(o, dict):
            return {str(k): clean(v) for k, v in o.items()}
        if isinstance(o, (list, tuple)):
            return [clean(v) for v in o]
        return o

    return json.dumps([clean(v.to_json()) for v in verdicts], indent=2)
