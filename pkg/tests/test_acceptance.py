"""Acceptance criteria 1-9. Each test prints a single ``criterion N: PASS|FAIL`` line."""

import random
import time

import pytest
from click.testing import CliRunner

from strategies import random_rmove
from medialq import harness
from medialq.cli import main
from medialq.coloring import brute_force_colorings, count_colorings, enhanced_polynomial, enumerate_colorings
from medialq.families import gen_hopf, gen_l2h, gen_trefoil
from medialq.quandle import FMap, alexander_quandle, enumerate_quandles, fmap_apply
from medialq.tangle import (
    AppliedMove,
    apply_move,
    fmap_of_pair_step,
    glue_closure,
    legal_moves,
    random_lom,
    solve_open,
    structure_fragment,
    tangle_t,
    trivial_strand,
    verify_structure,
)


@pytest.fixture
def report(capsys):
    def emit(n, ok, detail, elapsed=None, bound=None):
        timing = "" if elapsed is None else f" [{elapsed:.2f}s / {bound}s]"
        within = elapsed is None or elapsed < bound
        with capsys.disabled():
            print(f"\ncriterion {n}: {'PASS' if ok and within else 'FAIL'} {detail}{timing}")
        assert ok, detail
        assert within, f"took {elapsed:.1f}s, bound {bound}s"

    return emit


def key(f):
    return tuple(sorted(f.items()))


def orders_upto(n, filt="all"):
    return [q for k in range(1, n + 1) for q in enumerate_quandles(k, filt)]


def test_criterion_1_trefoil_z3(report):
    t0 = time.perf_counter()
    X = alexander_quandle(3, "1,1")  # t = 2, x*y = 2x - y
    L = gen_trefoil()
    oracle, solver = brute_force_colorings(L, X), enumerate_colorings(L, X)
    phi = enhanced_polynomial(L, X)
    out = CliRunner().invoke(main, ["verify", "erratum"])
    elapsed = time.perf_counter() - t0
    v = harness.erratum_report()
    ok = (
        sorted(map(key, oracle)) == sorted(map(key, solver))
        and len(solver) == 9 and phi == {1: 3, 3: 6}
        and out.exit_code == 0 and '"matches_stated": false' in out.stdout
        and v.stats["stated_count"] == 3
    )
    report(1, ok, f"count={len(solver)} phi={phi} (stated 3, 3q: flagged)", elapsed, 1)


def test_criterion_2_l2h_and_hopf(report):
    t0 = time.perf_counter()
    X = alexander_quandle(4, "1,1")  # t = 3
    H, P = gen_l2h(), gen_hopf()
    ph, pp = enhanced_polynomial(H, X), enhanced_polynomial(P, X)
    brute = enumerate_colorings(H, X), enumerate_colorings(P, X)
    oracle = brute_force_colorings(H, X), brute_force_colorings(P, X)
    elapsed = time.perf_counter() - t0
    ok = (
        ph.total() == 16 and ph == {1: 4, 2: 12}
        and pp.total() == 8 and pp == {1: 4, 2: 4}
        and all(sorted(map(key, a)) == sorted(map(key, b)) for a, b in zip(brute, oracle))
    )
    report(2, ok, f"L2H {ph}, Hopf {pp}", elapsed, 1)


def test_criterion_3_prop_3_1(report):
    v = harness.verify_prop_3_1(max_order=4, n_max=2, alexander_max=8)
    report(3, v.passed, f"{v.stats['total_cases']} cases, {len(v.counterexamples)} counterexamples",
           v.stats["seconds"], 300)


def test_criterion_4_lemma_and_theorem(report):
    qs = orders_upto(4, "medial")
    lemma = harness.verify_lemma_1(qs)
    thm = harness.verify_theorem_5_1(strands=20, moves=6, seed=1, quandles=qs)
    elapsed = lemma.stats["seconds"] + thm.stats["seconds"]
    ok = lemma.passed and thm.passed
    report(4, ok, f"T + 20 strands x {len(qs)} medial quandles, "
                  f"{len(lemma.counterexamples) + len(thm.counterexamples)} violations", elapsed, 300)


def exhaustive_strands(depth):
    out, frontier = [trivial_strand()], [trivial_strand()]
    for _ in range(depth):
        frontier = [apply_move(S, m) for S in frontier for m in legal_moves(S)]
        out += frontier
    return out


def test_criterion_5_structure_properties(report):
    t0 = time.perf_counter()
    strands = exhaustive_strands(3) + [random_lom(7 + k % 6, 1000 + k) for k in range(50)]
    qs = orders_upto(4)
    bad = []
    for S in strands:
        r = verify_structure(S)
        if not r.ok:
            bad.append((S.move_history, r.failures[:1]))
            continue
        C = glue_closure(S)
        for Q in qs:
            if enhanced_polynomial(C, Q) != {1: Q.n}:
                bad.append((S.move_history, Q.name))
    elapsed = time.perf_counter() - t0
    report(5, not bad, f"{len(strands)} strands x {len(qs)} quandles, {len(bad)} failures", elapsed, 300)


def printed_formulas(kind, Q, c):
    """The closed forms written for each structure, as bracket expressions."""
    star = lambda a, b: Q.op[a][b]
    bar = lambda a, b: Q.inv[a][b]
    x, y, m, n = c["x"], c["y"], c.get("m"), c.get("n")
    if kind == "1":
        return c["y'"] == star(bar(y, y), x) and c["x'"] == star(bar(x, y), x)
    if kind == "1'":
        return c["x'"] == star(bar(x, x), y) and c["y'"] == star(bar(y, x), y)
    if kind == "2":
        return (c["x'"] == star(bar(star(bar(x, x), y), m), n)
                and c["y'"] == star(bar(star(bar(y, x), y), m), n))
    return (c["y'"] == star(bar(star(bar(y, y), x), m), n)
            and c["x'"] == star(bar(star(bar(x, y), x), m), n))


def test_criterion_6_structure_formulas(report):
    medial5 = orders_upto(5, "medial")
    bad = []
    checked = 0
    for kind in ("1", "1'", "2", "2'"):
        D = structure_fragment(kind)
        for Q in medial5:
            for c in enumerate_colorings(D, Q):
                checked += 1
                if not printed_formulas(kind, Q, c):
                    bad.append((kind, Q.name, c))
    # two-step maps of the second structure family are the identity in legal contexts
    strands = exhaustive_strands(2) + [tangle_t()] + [random_lom(6, s) for s in range(40, 50)]
    steps = 0
    for S in strands:
        for i, link in enumerate(S.links):
            if not S.structures[link.structure].kind.startswith("2"):
                continue
            (x, y), (x2, y2) = S.parallel_pairs[i], S.parallel_pairs[i + 1]
            for Q in medial5:
                for c in solve_open(S, Q):
                    steps += 1
                    g = fmap_of_pair_step(S, i, c)
                    if (c[x], c[y]) != (c[x2], c[y2]) or fmap_apply(Q, g, c[x]) != c[x2]:
                        bad.append(("3.3.2", S.move_history, Q.name))
    report(6, not bad and steps > 0,
           f"{checked} fragment colorings, {steps} pair steps over {len(medial5)} medial quandles, {len(bad)} mismatches")


def test_criterion_7_section_7(report):
    verdicts = [harness.CLAIMS[c]() for c in ("prop7.1", "prop7.2", "prop7.3")]
    elapsed = sum(v.stats["seconds"] for v in verdicts)
    ok = all(v.passed for v in verdicts)
    report(7, ok, ", ".join(f"{v.claim}={'pass' if v.passed else 'fail'}" for v in verdicts), elapsed, 300)


def test_criterion_8_reidemeister_invariance(report):
    rng = random.Random(8)
    qs = orders_upto(4)
    start = [gen_trefoil(), gen_hopf(), gen_l2h(), tangle_t().diagram, random_lom(3, 5).diagram]
    applied, moves, bad = 0, set(), []
    L = start[0]
    for k in range(30):
        if k % 3 == 0:
            L = start[(k // 3) % len(start)]
        L2, move = random_rmove(L, rng)
        applied += 1
        moves.add(move)
        for Q in qs:
            if count_colorings(L2, Q) != count_colorings(L, Q) or enhanced_polynomial(L2, Q) != enhanced_polynomial(L, Q):
                bad.append((L.name, move, Q.name))
        L = L2
    report(8, applied >= 20 and not bad,
           f"{applied} moves ({'/'.join(sorted(moves))}) x {len(qs)} quandles, {len(bad)} changes")


def test_criterion_9_enumeration(report):
    t0 = time.perf_counter()
    counts = [len(list(enumerate_quandles(n, up_to_iso=True))) for n in range(1, 6)]
    elapsed = time.perf_counter() - t0
    report(9, counts == [1, 1, 3, 7, 22], f"counts {counts}", elapsed, 60)
