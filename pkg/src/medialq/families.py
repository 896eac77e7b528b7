"""Generators for the link families compared in the verification harness."""

from __future__ import annotations

from .diagram import Crossing, DiagramError, make_diagram
from .tangle import OpenStrand, StrandError, tangle_t, trivial_strand


class InvalidTangle(DiagramError):
    pass


class OddCount(DiagramError):
    pass


def gen_unknot():
    return make_diagram("unknot", [], (), ("u",))


def gen_trefoil():
    return make_diagram(
        "trefoil",
        [
            Crossing("c1", 1, "c", "b", "a"),
            Crossing("c2", 1, "b", "a", "c"),
            Crossing("c3", 1, "a", "c", "b"),
        ],
    )


def gen_hopf():
    return make_diagram(
        "hopf",
        [Crossing("h1", 1, "m", "n", "m"), Crossing("h2", 1, "n", "m", "n")],
    )


def gen_l2h():
    """Two Hopf clasps sharing the middle circle y1 ∪ y2."""
    return make_diagram(
        "L2H",
        [
            Crossing("t1", 1, "x", "y1", "x"),
            Crossing("t2", 1, "y1", "x", "y2"),
            Crossing("t3", 1, "y2", "z", "y1"),
            Crossing("t4", 1, "z", "y2", "z"),
        ],
    )


def _check_strand(S):
    if not isinstance(S, OpenStrand) or len(S.diagram.endpoints) != 4:
        raise InvalidTangle("expected an open strand with four free ends")
    a0, b0, ae, be = S.ends
    roles_in = {c.under_in for c in S.diagram.crossings}
    roles_out = {c.under_out for c in S.diagram.crossings}
    # path a must run in at a0 and out at ae; path b the other way
    if a0 in roles_out or b0 in roles_in or ae in roles_in or be in roles_out:
        raise InvalidTangle("endpoint orientations do not match an open strand")


def _copy(S, tag):
    """Crossings and end arcs of a strand with every arc suffixed by ``tag``."""
    r = lambda a: f"{a}_{tag}"
    cs = [Crossing(f"{c.id}_{tag}", c.sign, r(c.under_in), r(c.over), r(c.under_out)) for c in S.diagram.crossings]
    arcs = [r(a) for a in S.diagram.arcs]
    a0, b0, ae, be = (r(a) for a in S.ends)
    return cs, arcs, (a0, b0, ae, be)


class _Builder:
    def __init__(self):
        self.crossings, self.arcs, self.alias = [], [], {}

    def add(self, cs, arcs):
        self.crossings += cs
        self.arcs += arcs

    def merge(self, keep, drop):
        self.alias[drop] = keep

    def find(self, a):
        while a in self.alias:
            a = self.alias[a]
        return a

    def build(self, name):
        f = self.find
        cs = [Crossing(c.id, c.sign, f(c.under_in), f(c.over), f(c.under_out)) for c in self.crossings]
        arcs = list(dict.fromkeys(f(a) for a in self.arcs))
        return make_diagram(name, cs, (), arcs)


def gen_kom_knot(strand=None):
    """Close a strand by clasping its two end pairs together."""
    S = strand if strand is not None else trivial_strand()
    _check_strand(S)
    a0, b0, ae, be = S.ends
    cs = list(S.diagram.crossings) + [
        Crossing("k1", 1, ae, a0, be),
        Crossing("k2", 1, b0, be, a0),
    ]
    return make_diagram(f"Kom({S.diagram.name})", cs, (), S.diagram.arcs)


def _split_out_end(B, arc, new):
    """Give the outgoing end of ``arc`` to a fresh arc ``new``."""
    B.crossings = [
        Crossing(c.id, c.sign, new, c.over, c.under_out) if c.under_in == arc else c
        for c in B.crossings
    ]
    B.arcs.append(new)


def gen_two_component_lom(s1=None, s2=None):
    """Two strands, each closed like a Kom knot, hooked together by one clasp."""
    s1 = s1 if s1 is not None else trivial_strand()
    s2 = s2 if s2 is not None else trivial_strand()
    B = _Builder()
    starts = []
    for tag, S, ids in (("P", s1, ("t1", "t2")), ("Q", s2, ("t3", "t4"))):
        _check_strand(S)
        cs, arcs, (a0, b0, ae, be) = _copy(S, tag)
        cs += [Crossing(ids[0], 1, ae, a0, be), Crossing(ids[1], 1, b0, be, a0)]
        B.add(cs, arcs)
        starts.append(a0)
    p, q = starts
    p2, q2 = f"{p}'", f"{q}'"
    _split_out_end(B, p, p2)
    _split_out_end(B, q, q2)
    B.crossings += [Crossing("t5", 1, p, q2, p2), Crossing("t6", 1, q, p, q2)]
    return B.build(f"TwoLom({s1.diagram.name},{s2.diagram.name})")


def gen_generalized_as(strands, bottom=None, name=None):
    """Three-component link: a chain of strands clasped to an x circle and a y strand.

    ``strands`` (an even number of them) are composed end to end and closed into
    the middle component. The x circle hooks the top strand between strands
    2s-1 and 2s for every s, and ``bottom`` (trivial by default) is closed into
    the y component, which clasps both the x circle and the middle component.
    """
    strands = list(strands)
    if not strands or len(strands) % 2:
        raise OddCount(f"need a positive even number of strands, got {len(strands)}")
    L0 = bottom if bottom is not None else trivial_strand()
    for S in strands + [L0]:
        _check_strand(S)
    B = _Builder()
    copies = []
    for k, S in enumerate(strands, 1):
        cs, arcs, ends = _copy(S, k)
        B.add(cs, arcs)
        copies.append(ends)
    sites = len(strands) // 2
    x_prev = "x0"
    B.arcs.append("x0")
    for k in range(len(copies) - 1):
        _, _, ae, be = copies[k]
        a0n, b0n, _, _ = copies[k + 1]
        B.merge(be, b0n)
        if k % 2 == 0:
            s = k // 2 + 1
            q, X, x_next = f"q{s}", f"X{s}", (f"x{s}" if s < sites else "xl")
            B.arcs += [q, X, x_next]
            B.crossings += [
                Crossing(f"c{2 * s - 1}", 1, ae, X, q),
                Crossing(f"c{2 * s}", -1, q, X, a0n),
                Crossing(f"d{2 * s - 1}", -1, x_prev, ae, X),
                Crossing(f"d{2 * s}", 1, X, a0n, x_next),
            ]
            x_prev = x_next
        else:
            B.merge(ae, a0n)
    first, last = copies[0], copies[-1]
    B.merge(first[0], first[1])  # start cap of the middle component
    m1, m2 = last[2], last[3]
    # bottom strand closes into the y component
    ycs, yarcs, (ya0, yb0, yae, ybe) = _copy(L0, "y")
    B.add(ycs, yarcs)
    B.crossings += [
        Crossing("t1", 1, x_prev, yb0, "x0"),
        Crossing("t2", 1, yb0, "x0", ya0),
        Crossing("t3", 1, yae, m2, ybe),
        Crossing("t4", 1, m1, yae, m2),
    ]
    return B.build(name or f"GAS({len(strands)})")


def gen_allen_swenberg(n, tangle=None):
    """A_n: 2n copies of the tangle in the middle component."""
    if n < 1:
        raise ValueError("n must be positive")
    T = tangle if tangle is not None else tangle_t()
    try:
        return gen_generalized_as([T] * (2 * n), name=f"A{n}")
    except StrandError as e:
        raise InvalidTangle(str(e)) from e


def as_roles(L):
    """Split an Allen-Swenberg style link into its x, middle and y components."""
    from .diagram import components

    roles = {}
    for comp in components(L):
        if "x0" in comp:
            roles["x"] = comp
        elif any(a.endswith("_y") for a in comp):
            roles["y"] = comp
        else:
            roles["middle"] = comp
    return roles


GENERATORS = {
    "unknot": gen_unknot,
    "trefoil": gen_trefoil,
    "hopf": gen_hopf,
    "l2h": gen_l2h,
}
