"""Hypothesis strategies for small combinatorial diagrams."""

from hypothesis import strategies as st

from medialq.diagram import (
    Crossing,
    R1Site,
    R2Site,
    apply_reidemeister,
    make_diagram,
    r1_removal_sites,
    r2_removal_sites,
    r3_sites,
)


@st.composite
def closed_diagrams(draw, max_arcs=8):
    """Random (possibly virtual) closed diagrams: cycles of arcs with random over-arcs."""
    k = draw(st.integers(1, max_arcs))
    arcs = [f"a{i}" for i in range(k)]
    cuts = sorted(draw(st.sets(st.integers(1, k - 1), max_size=3))) if k > 1 else []
    bounds = [0] + cuts + [k]
    crossings = []
    for lo, hi in zip(bounds, bounds[1:]):
        comp = arcs[lo:hi]
        loop = draw(st.booleans()) if len(comp) == 1 else False
        if loop:
            continue  # a bare circle
        for i, a in enumerate(comp):
            b = comp[(i + 1) % len(comp)]
            crossings.append(Crossing(f"c{len(crossings)}", draw(st.sampled_from((1, -1))),
                                      a, draw(st.sampled_from(arcs)), b))
    return make_diagram("random", crossings, (), arcs)


def random_rmove(L, rng):
    """One random Reidemeister move that applies to L."""
    options = []
    options.append(("R1", R1Site(rng.choice(L.arcs), rng.choice((1, -1)), rng.choice(("before", "after"))), "add"))
    if len(L.arcs) > 1 and L.crossings:
        over, under = rng.sample(L.arcs, 2)
        if any(c.under_in == under for c in L.crossings):
            options.append(("R2", R2Site(over, under, rng.choice((1, -1))), "add"))
    options += [("R1", s, "remove") for s in r1_removal_sites(L)]
    options += [("R2", s, "remove") for s in r2_removal_sites(L)]
    options += [("R3", s, "add") for s in r3_sites(L)]
    move, site, direction = rng.choice(options)
    return apply_reidemeister(L, move, site, direction), move
