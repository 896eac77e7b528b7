import random

import pytest

from medialq.diagram import (
    Crossing,
    IllegalSite,
    ParseError,
    R1Site,
    R2Site,
    RemoveSite,
    ValidationError,
    apply_reidemeister,
    component_count,
    components,
    crossing_relations,
    diagram_from_json,
    diagram_to_json,
    isomorphic_relabel,
    make_diagram,
    parse_diagram,
    r1_removal_sites,
    r2_removal_sites,
    r3_sites,
    serialize,
)
from medialq.families import gen_allen_swenberg, gen_hopf, gen_kom_knot, gen_l2h, gen_trefoil, gen_unknot
from medialq.tangle import glue_closure, random_lom, tangle_t, tangle_t_fixture

TREFOIL_TEXT = """link trefoil
crossing c1 + under_in=c over=b under_out=a
crossing c2 + under_in=b over=a under_out=c
crossing c3 + under_in=a over=c under_out=b
"""


def test_parse_trefoil():
    L = parse_diagram(TREFOIL_TEXT)
    assert len(L.arcs) == 3 and len(L.crossings) == 3 and component_count(L) == 1
    rels = {(r.lhs, r.rhs_base, r.rhs_operand, r.use_inverse) for r in crossing_relations(L)}
    assert rels == {("a", "c", "b", False), ("c", "b", "a", False), ("b", "a", "c", False)}


def test_parse_trivial_open_strand():
    L = parse_diagram("link seg\nendpoint a\nendpoint a\nendpoint b\nendpoint b\n")
    assert L.arcs == ("a", "b") and L.crossings == () and L.is_open


def test_rejects_double_under_out():
    bad = TREFOIL_TEXT.replace("under_out=c", "under_out=a")
    with pytest.raises(ValidationError):
        parse_diagram(bad)


@pytest.mark.parametrize("text", [
    "link x\ncrossing c1 * under_in=a over=b under_out=c\n",
    "link x\ncrossing c1 + under_in=a over=b\n",
    "link x\nbogus record\n",
    "link x\ncrossing c1 + under_in=a over=b sideways=c\n",
])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_diagram(text)


def test_validation_errors():
    with pytest.raises(ValidationError):
        make_diagram("x", [Crossing("c", 1, "a", "b", "c")])  # free ends in a closed diagram
    with pytest.raises(ValidationError):
        make_diagram("x", [Crossing("c", 2, "a", "a", "a")])
    with pytest.raises(ValidationError):
        make_diagram("x", [], ("a", "a", "b"))


def test_relations_and_components_of_generators():
    assert crossing_relations(gen_unknot()) == []
    assert component_count(gen_unknot()) == 1 and len(gen_unknot().arcs) == 1
    assert component_count(gen_hopf()) == 2
    H = gen_l2h()
    assert set(H.arcs) == {"x", "y1", "y2", "z"} and component_count(H) == 3
    rels = [str(r) for r in crossing_relations(H)]
    assert rels == ["x = x * y1", "y2 = y1 * x", "y1 = y2 * z", "z = z * y2"]
    hopf = {(r.lhs, r.rhs_base, r.rhs_operand) for r in crossing_relations(gen_hopf())}
    assert hopf == {("m", "m", "n"), ("n", "n", "m")}
    for n in (1, 2, 3):
        assert component_count(gen_allen_swenberg(n)) == 3
    assert component_count(gen_kom_knot(random_lom(4, 7))) == 1


def test_relations_are_total():
    for L in (gen_trefoil(), gen_l2h(), gen_allen_swenberg(1), tangle_t().diagram):
        rels = crossing_relations(L)
        assert len(rels) == len(L.crossings)
        for r in rels:
            assert {r.lhs, r.rhs_base, r.rhs_operand} <= set(L.arcs)


@pytest.mark.parametrize("make", [gen_unknot, gen_trefoil, gen_hopf, gen_l2h,
                                  lambda: gen_allen_swenberg(2), lambda: tangle_t().diagram,
                                  lambda: gen_kom_knot(random_lom(3, 1))])
def test_round_trips(make):
    L = make()
    once = parse_diagram(serialize(L))
    assert once == L
    assert parse_diagram(serialize(once)) == once
    assert diagram_from_json(diagram_to_json(L)) == L


def test_isomorphic_relabel():
    T = tangle_t()
    m = isomorphic_relabel(tangle_t_fixture(), T.diagram)
    assert m is not None and m["n"] == "a0" and m["e"] == "b9"
    assert isomorphic_relabel(gen_trefoil(), gen_hopf()) is None


def test_r1_add_and_remove():
    U = gen_unknot()
    K = apply_reidemeister(U, "R1", R1Site("u"), "add")
    assert len(K.crossings) == 1 and component_count(K) == 1
    back = apply_reidemeister(K, "R1", RemoveSite((K.crossings[0].id,)), "remove")
    assert len(back.crossings) == 0 and len(back.arcs) == 1


def test_r2_add_then_remove_is_identity():
    L = gen_trefoil()
    M = apply_reidemeister(L, "R2", R2Site("a", "b", 1), "add")
    assert len(M.crossings) == 5
    (site,) = [s for s in r2_removal_sites(M) if {"r1", "r2"} == set(s.crossings)]
    back = apply_reidemeister(M, "R2", site, "remove")
    assert isomorphic_relabel(back, L) is not None


def test_illegal_sites():
    L = gen_trefoil()
    with pytest.raises(IllegalSite):
        apply_reidemeister(L, "R1", RemoveSite(("c1",)), "remove")
    with pytest.raises(IllegalSite):
        apply_reidemeister(L, "R2", RemoveSite(("c1", "c2")), "remove")
    with pytest.raises(IllegalSite):
        apply_reidemeister(L, "R2", R2Site("a", "a"), "add")
    with pytest.raises(IllegalSite):
        apply_reidemeister(L, "R1", R1Site("zz"), "add")


def test_r3_sites_exist_on_the_tangle():
    sites = r3_sites(tangle_t().diagram)
    assert sites
    for s in sites:
        out = apply_reidemeister(tangle_t().diagram, "R3", s)
        assert len(out.crossings) == len(tangle_t().diagram.crossings)


def test_moves_preserve_components():
    rng = random.Random(5)
    L = gen_l2h()
    for _ in range(15):
        L = apply_reidemeister(L, "R1", R1Site(rng.choice(L.arcs), rng.choice((1, -1))), "add")
        assert component_count(L) == 3
        over, under = rng.sample(L.arcs, 2)
        L = apply_reidemeister(L, "R2", R2Site(over, under, rng.choice((1, -1))), "add")
        assert component_count(L) == 3


def test_closure_of_trivial_strand_is_unknot():
    from medialq.tangle import trivial_strand

    U = glue_closure(trivial_strand())
    assert len(U.arcs) == 1 and U.crossings == ()


def test_components_cover_arcs():
    L = gen_allen_swenberg(2)
    comps = components(L)
    assert sorted(a for c in comps for a in c) == sorted(L.arcs)
    assert len(r1_removal_sites(L)) >= 0
