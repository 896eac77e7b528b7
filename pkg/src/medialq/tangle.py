"""Open strands built from the four local structures, with their bookkeeping.

A strand has two paths. Arcs of path a are oriented along the path and arcs of
path b against it, so the trivial strand is two oppositely oriented segments.
Each structure is a list of template relations ``lhs = base op operand``
together with a binding of template variables to arcs. The diagram is
re-encoded from the structures after every move: the orientation of a path
decides which arc of a relation enters the crossing.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field, replace

from .coloring import solution_array
from .diagram import Crossing, DiagramError, make_diagram
from .quandle import FMap, is_medial


class StrandError(DiagramError):
    pass


class DirectionViolation(StrandError):
    pass


class BadPairIndex(StrandError, IndexError):
    pass


class NotMedial(StrandError):
    pass


class StructureViolation(StrandError):
    def __init__(self, prop, witness):
        self.prop = prop
        self.witness = witness
        super().__init__(f"property {prop} fails: {witness}")


# template relations: (lhs, base, operand, +1 for *, -1 for *^-1)
RELATIONS = {
    "1": (
        ("y'", "y", "x", 1),
        ("x'", "x", "y'", -1),
        ("i", "n", "y'", 1),
        ("n'", "i", "x", -1),
        ("j", "m", "x'", -1),
        ("m'", "j", "y'", 1),
    ),
    "1'": (
        ("x'", "x", "y", 1),
        ("y'", "y", "x'", -1),
        ("i", "n", "y", 1),
        ("n'", "i", "x'", -1),
        ("j", "m", "x'", -1),
        ("m'", "j", "y'", 1),
    ),
    "2": (
        ("x1", "x", "y", 1),
        ("x2", "x1", "m", -1),
        ("x'", "x2", "n", 1),
        ("y1", "y", "m", -1),
        ("y2", "y1", "x2", -1),
        ("y'", "y2", "n", 1),
    ),
    "2'": (
        ("y1", "y", "x", 1),
        ("x1", "x", "m", -1),
        ("y2", "y1", "m", -1),
        ("x2", "x1", "y2", -1),
        ("y'", "y2", "n", 1),
        ("x'", "x2", "n", 1),
    ),
}

# which path (a or b) carries each variable family when the mover ends the strand
SIDES = {
    "1": {"x": "b", "y": "a", "n": "a", "m": "b"},
    "1'": {"x": "b", "y": "a", "n": "a", "m": "b"},
    "2": {"x": "a", "y": "b", "n": "a", "m": "b"},
    "2'": {"x": "a", "y": "b", "n": "b", "m": "a"},
}

# threading of the target pair that keeps the endpoint equalities;
# "co" = the template's horizontal direction runs with the path
LEGAL_THREADING = {"1": "co", "1'": "contra", "2": "co", "2'": "co"}

KINDS = ("1.1", "1.2", "1.1'", "1.2'", "2.1", "2.2", "2.1'", "2.2'")
MOVER_ENDS = ("finish", "start")


def structure_of(kind):
    """'1.2'' -> "1'" ; '2.1' -> '2'."""
    head, _, tail = kind.partition(".")
    return head + ("'" if tail.endswith("'") else "")


def legal_mover_end(kind):
    return "finish" if kind.split(".")[1].rstrip("'") == "1" else "start"


def direction_table():
    """(kind, mover end, target threading) -> legal?"""
    table = {}
    for kind in KINDS:
        s = structure_of(kind)
        for end in MOVER_ENDS:
            for thr in ("co", "contra"):
                # a start-end move is the finish-end move on the reversed strand, where
                # the target's threading flips; the kind fixes the mover end
                frame_thr = thr if end == "finish" else ("contra" if thr == "co" else "co")
                table[(kind, end, thr)] = end == legal_mover_end(kind) and frame_thr == LEGAL_THREADING[s]
    return table


@dataclass(frozen=True)
class AppliedMove:
    kind: str
    mover_end: str
    over_pair_index: int


@dataclass(frozen=True)
class Structure:
    kind: str
    binding: tuple  # sorted (var, arc) pairs

    @property
    def env(self):
        return dict(self.binding)


@dataclass(frozen=True)
class PairLink:
    structure: int
    role: str  # "horizontal" or "vertical"
    along: bool  # template input sits at the lower pair index


@dataclass(frozen=True)
class OpenStrand:
    diagram: object
    path_a: tuple
    path_b: tuple
    parallel_pairs: tuple
    links: tuple
    structures: tuple
    move_history: tuple = ()
    prefixes: tuple = ("a", "b")

    @property
    def directions(self):
        """+1 where an arc's orientation follows its path, -1 where it opposes it."""
        d = {a: 1 for a in self.path_a}
        d.update({b: -1 for b in self.path_b})
        return d

    @property
    def ends(self):
        return self.path_a[0], self.path_b[0], self.path_a[-1], self.path_b[-1]


# --- encoding -----------------------------------------------------------------


def _positions(path_a, path_b):
    pos = {a: ("a", i) for i, a in enumerate(path_a)}
    pos.update({b: ("b", i) for i, b in enumerate(path_b)})
    return pos


def encode_relation(lhs, base, operand, op, pos, cid):
    """Crossing realising ``lhs = base op operand`` for two arcs on one path."""
    side, il = pos[lhs]
    side_b, ib = pos[base]
    if side != side_b:
        raise StrandError(f"relation {lhs} = {base} . {operand} spans both paths")
    later_is_lhs = il > ib
    if (side == "a") == later_is_lhs:
        return Crossing(cid, op, base, operand, lhs)
    return Crossing(cid, -op, lhs, operand, base)


def _build_diagram(name, path_a, path_b, structures):
    pos = _positions(path_a, path_b)
    crossings = []
    for si, s in enumerate(structures):
        env = s.env
        for ri, (l, b, o, op) in enumerate(RELATIONS[s.kind]):
            crossings.append(encode_relation(env[l], env[b], env[o], op, pos, f"s{si}r{ri}"))
    endpoints = (path_a[0], path_a[-1], path_b[0], path_b[-1])
    return make_diagram(name, crossings, endpoints, tuple(path_a) + tuple(path_b))


def _assemble(path_a, path_b, pairs, links, structures, history, prefixes, name="strand"):
    path_a, path_b = tuple(path_a), tuple(path_b)
    D = _build_diagram(name, path_a, path_b, structures)
    return OpenStrand(D, path_a, path_b, tuple(pairs), tuple(links), tuple(structures),
                      tuple(history), prefixes)


def trivial_strand():
    return _assemble(["a0"], ["b0"], [("a0", "b0")], [], [], [], ("a", "b"), "trivial")


def reverse_strand(S):
    """Read the strand from the other end: swap the paths and reverse them.

    Arc orientations are untouched, so the diagram is the same link.
    """
    pairs = [(b, a) for a, b in reversed(S.parallel_pairs)]
    links = [replace(l, along=not l.along) for l in reversed(S.links)]
    return _assemble(
        reversed(S.path_b), reversed(S.path_a), pairs, links, S.structures,
        S.move_history, (S.prefixes[1], S.prefixes[0]), S.diagram.name,
    )


# --- moves --------------------------------------------------------------------


class _Names:
    def __init__(self, S):
        self.prefixes = {"a": S.prefixes[0], "b": S.prefixes[1]}
        self.next = {}
        for p in S.prefixes:
            used = [int(a[len(p):]) for a in S.diagram.arcs
                    if a.startswith(p) and a[len(p):].isdigit()]
            self.next[p] = max(used, default=-1) + 1

    def new(self, side):
        p = self.prefixes[side]
        k = self.next[p]
        self.next[p] += 1
        return f"{p}{k}"


def _finish_move(S, structure, p, threading):
    """Apply a structure with the mover at the finishing end of the strand."""
    k = len(S.parallel_pairs) - 1
    if not 0 <= p <= k:
        raise BadPairIndex(f"pair index {p} outside 0..{k}")
    sides = SIDES[structure]
    if structure.startswith("2") and threading == "contra":
        sides = dict(sides, n=sides["m"], m=sides["n"])
    paths = {"a": list(S.path_a), "b": list(S.path_b)}
    pairs = list(S.parallel_pairs)
    links = list(S.links)
    structures = list(S.structures)
    names = _Names(S)
    mover = dict(zip("ab", pairs[k]))
    target = dict(zip("ab", pairs[p]))
    env = {}

    if structure.startswith("1"):
        pos = _positions(S.path_a, S.path_b)
        pieces = {}
        for side in "ab":
            t = target[side]
            inner, late = names.new(side), names.new(side)
            pieces[side] = (t, inner, late)
            structures = [_split_binding(s, t, late, pos) for s in structures]
            path = paths[side]
            at = path.index(t)
            path[at + 1:at + 1] = [inner, late]
        for fam, (a_var, i_var, b_var) in (("n", ("n", "i", "n'")), ("m", ("m", "j", "m'"))):
            early, inner, late = pieces[sides[fam]]
            if threading == "contra":
                early, late = late, early
            env.update({a_var: early, i_var: inner, b_var: late})
        lates = {side: pieces[side][2] for side in "ab"}
        vert_in = lates if p == k else mover
        for fam in ("x", "y"):
            side = sides[fam]
            env[fam] = vert_in[side]
            env[fam + "'"] = names.new(side)
            paths[side].append(env[fam + "'"])
        idx = len(structures)
        pairs.insert(p + 1, (lates["a"], lates["b"]))
        new_end = {sides["x"]: env["x'"], sides["y"]: env["y'"]}
        pairs.append((new_end["a"], new_end["b"]))
        links.insert(p, PairLink(idx, "horizontal", threading == "co"))
        links.append(PairLink(idx, "vertical", True))
    else:
        env.update({"n": target[sides["n"]], "m": target[sides["m"]]})
        for fam in ("x", "y"):
            side = sides[fam]
            chain = [mover[side]] + [names.new(side) for _ in range(3)]
            env.update(zip((fam, fam + "1", fam + "2", fam + "'"), chain))
            paths[side].extend(chain[1:])
        idx = len(structures)
        new_end = {sides["x"]: env["x'"], sides["y"]: env["y'"]}
        pairs.append((new_end["a"], new_end["b"]))
        links.append(PairLink(idx, "vertical", True))

    structures.append(Structure(structure, tuple(sorted(env.items()))))
    return _assemble(paths["a"], paths["b"], pairs, links, structures, S.move_history,
                     S.prefixes, S.diagram.name)


def _split_binding(s, t, late, pos):
    """Rebind the variables of ``s`` that attach to the later end of arc ``t``."""
    env = s.env
    moved = {}
    for var, arc in env.items():
        if arc != t:
            continue
        for l, b, _, _ in RELATIONS[s.kind]:
            partner = {l: b, b: l}.get(var)
            if partner is None or l == b:
                continue
            if pos[env[partner]][1] > pos[t][1]:
                moved[var] = late
                break
    if not moved:
        return s
    env.update(moved)
    return Structure(s.kind, tuple(sorted(env.items())))


def apply_move(S, m, exploratory=False):
    """Apply one move. Outside exploratory mode only direction-legal moves are accepted."""
    if m.kind not in KINDS:
        raise ValueError(f"unknown move kind {m.kind!r}")
    if m.mover_end not in MOVER_ENDS:
        raise ValueError(f"mover_end must be one of {MOVER_ENDS}")
    legal = m.mover_end == legal_mover_end(m.kind)
    if not legal and not exploratory:
        raise DirectionViolation(
            f"move {m.kind} needs the mover at the {legal_mover_end(m.kind)} end, got {m.mover_end}"
        )
    s = structure_of(m.kind)
    thr = LEGAL_THREADING[s]
    if not legal:
        thr = "contra" if thr == "co" else "co"
    npairs = len(S.parallel_pairs)
    if not 0 <= m.over_pair_index < npairs:
        raise BadPairIndex(f"pair index {m.over_pair_index} outside 0..{npairs - 1}")
    if m.mover_end == "finish":
        out = _finish_move(S, s, m.over_pair_index, thr)
    else:
        R = reverse_strand(S)
        out = reverse_strand(_finish_move(R, s, npairs - 1 - m.over_pair_index, thr))
    return replace(out, move_history=S.move_history + (m,))


def apply_moves(S, moves, exploratory=False):
    for m in moves:
        S = apply_move(S, m, exploratory)
    return S


def legal_moves(S):
    n = len(S.parallel_pairs)
    return [AppliedMove(k, legal_mover_end(k), p) for k in KINDS for p in range(n)]


def random_lom(moves, seed):
    rng = random.Random(seed)
    S = trivial_strand()
    for _ in range(moves):
        while True:
            kind = rng.choice(KINDS)
            end = rng.choice(MOVER_ENDS)
            p = rng.randrange(len(S.parallel_pairs))
            if end == legal_mover_end(kind):
                break
        S = apply_move(S, AppliedMove(kind, end, p))
    return replace(S, diagram=replace(S.diagram, name=f"lom_{moves}_{seed}"))


def strand_from_moves(moves, exploratory=False):
    return apply_moves(trivial_strand(), moves, exploratory)


# --- structure checks -----------------------------------------------------------


def compute_paths(S):
    """Trace both paths from the diagram's under-crossings alone."""
    D = S.diagram
    nxt = {}
    for c in D.crossings:
        nxt[c.under_in] = c.under_out
    prv = {v: k for k, v in nxt.items()}
    a0, ae, b0, be = D.endpoints

    def walk(start, step):
        path, seen = [start], {start}
        while path[-1] in step:
            a = step[path[-1]]
            if a in seen:
                raise StructureViolation(1, f"cycle through {a}")
            seen.add(a)
            path.append(a)
        return tuple(path)

    pa = walk(a0, nxt)
    pb = walk(b0, prv)
    if pa[-1] != ae or pb[-1] != be:
        raise StructureViolation(1, f"paths end at {pa[-1]}, {pb[-1]} instead of {ae}, {be}")
    covered = set(pa) | set(pb)
    if covered != set(D.arcs):
        raise StructureViolation(1, f"uncovered arcs {sorted(set(D.arcs) - covered)}")
    if set(pa) & set(pb):
        raise StructureViolation(1, f"shared arcs {sorted(set(pa) & set(pb))}")
    if (pa, pb) != (S.path_a, S.path_b):
        raise StructureViolation(1, "recomputed paths differ from the bookkeeping")
    return pa, pb


@dataclass
class StructureReport:
    ok: bool
    failures: list = field(default_factory=list)


def _link_ok(S, i, link):
    s = S.structures[link.structure]
    env = s.env
    if link.role == "horizontal":
        ins, outs = {env["n"], env["m"]}, {env["n'"], env["m'"]}
    else:
        ins, outs = {env["x"], env["y"]}, {env["x'"], env["y'"]}
    lo, hi = set(S.parallel_pairs[i]), set(S.parallel_pairs[i + 1])
    return (lo, hi) == ((ins, outs) if link.along else (outs, ins))


def verify_structure(S):
    fails = []
    try:
        compute_paths(S)
    except StructureViolation as e:
        fails.append((e.prop, e.witness))
    D = S.diagram
    pa, pb = S.path_a, S.path_b
    if set(pa) | set(pb) != set(D.arcs) or set(pa) & set(pb):
        fails.append((1, "paths do not partition the arcs"))
    if len(pa) != len(pb):
        fails.append((2, (len(pa), len(pb))))
    pairs = S.parallel_pairs
    if not pairs or pairs[0] != (pa[0], pb[0]) or pairs[-1] != (pa[-1], pb[-1]):
        fails.append((3, (pairs[:1], pairs[-1:])))
    ia = {a: i for i, a in enumerate(pa)}
    ib = {b: i for i, b in enumerate(pb)}
    last = -1
    for x, y in pairs:
        if x not in ia or y not in ib:
            fails.append((4, (x, y)))
            continue
        if ia[x] != ib[y]:
            fails.append((5, (x, y)))
        if ia[x] <= last:
            fails.append((5, ("order", x, y)))
        last = ia[x]
    d = S.directions
    for x, y in pairs:
        if d.get(x) != -d.get(y, 0):
            fails.append((6, (x, y)))
    if not fails:
        orient = {c.under_in: c.under_out for c in D.crossings}
        for u, v in zip(pa, pa[1:]):
            if orient.get(u) != v:
                fails.append((6, (u, v)))
        for u, v in zip(pb, pb[1:]):
            if orient.get(v) != u:
                fails.append((6, (v, u)))
    if len(S.links) != len(pairs) - 1:
        fails.append((7, f"{len(S.links)} links for {len(pairs)} pairs"))
    else:
        for i, link in enumerate(S.links):
            if not _link_ok(S, i, link):
                fails.append((7, i))
    return StructureReport(not fails, fails)


# --- closure and the theorem ------------------------------------------------------


def glue_closure(S, name=None):
    """Join a0 to b0 and a_e to b_e."""
    a0, b0, ae, be = S.ends
    D = S.diagram.renamed({b0: a0, be: ae}, name or f"closure({S.diagram.name})")
    return make_diagram(D.name, D.crossings, (), D.arcs)


@dataclass
class TheoremReport:
    ok: bool
    colorings: int
    violations: list = field(default_factory=list)


def check_theorem_5_1(S, X, exploratory=False, max_report=10):
    if not exploratory and not is_medial(X):
        raise NotMedial(f"{X.name or 'quandle'} is not medial")
    arcs = S.diagram.arcs
    arr = solution_array(S.diagram, X)
    col = {a: i for i, a in enumerate(arcs)}
    a0, b0, ae, be = S.ends
    bad = (arr[:, col[a0]] != arr[:, col[ae]]) | (arr[:, col[b0]] != arr[:, col[be]])
    rows = arr[bad][:max_report]
    violations = [dict(zip(arcs, map(int, r))) for r in rows]
    return TheoremReport(not bad.any(), len(arr), violations)


def solve_open(S, X):
    from .coloring import enumerate_colorings

    return enumerate_colorings(S.diagram, X)


def fmap_of_pair_step(S, i, coloring):
    """The map carrying pair i to pair i+1 under a fixed coloring."""
    if not 0 <= i < len(S.links):
        raise BadPairIndex(f"no link after pair {i}")
    link = S.links[i]
    s = S.structures[link.structure]
    v = {var: coloring[arc] for var, arc in s.binding}
    if s.kind == "1":
        f = FMap([(v["x"], v["y"])] if link.role == "horizontal" else [(v["y"], v["x"])])
    elif s.kind == "1'":
        f = FMap([(v["x"], v["y"])])
    elif s.kind == "2":
        f = FMap([(v["m"], v["n"]), (v["x"], v["y"])])
    else:
        f = FMap([(v["m"], v["n"]), (v["y"], v["x"])])
    return f if link.along else f.inverse()


def strand_fmap(S, coloring):
    """Composite of every pair step, carrying pair 0 to the last pair."""
    f = FMap()
    for i in range(len(S.links)):
        f = f.then(fmap_of_pair_step(S, i, coloring))
    return f


def pair_values(S, i, coloring):
    x, y = S.parallel_pairs[i]
    return coloring[x], coloring[y]


# --- serialisation ----------------------------------------------------------------


def serialize_strand(S):
    from .diagram import serialize

    lines = [serialize(S.diagram).rstrip("\n"), "moves"]
    lines += [f"{m.kind} {m.mover_end} {m.over_pair_index}" for m in S.move_history]
    return "\n".join(lines) + "\n"


def parse_strand(text):
    """Rebuild a strand by replaying the moves trailer; the diagram must agree."""
    from .diagram import isomorphic_relabel, parse_diagram

    D = parse_diagram(text)
    lines = text.splitlines()
    try:
        start = [ln.strip() for ln in lines].index("moves") + 1
    except ValueError:
        raise StrandError("strand file has no moves trailer") from None
    moves = []
    for ln in lines[start:]:
        if ln.strip():
            kind, end, p = ln.split()
            moves.append(AppliedMove(kind, end, int(p)))
    S = strand_from_moves(moves)
    if isomorphic_relabel(D, S.diagram) is None:
        raise StrandError("diagram does not match the replayed moves")
    return replace(S, diagram=replace(S.diagram, name=D.name))


# --- the tangle used inside the Allen-Swenberg links -----------------------------

TANGLE_T_MOVES = (
    AppliedMove("1.1", "finish", 0),
    AppliedMove("2.1", "finish", 1),
    AppliedMove("1.1", "finish", 1),
)

# relations transcribed from the figure of the tangle, with its arc names
TANGLE_T_RELATIONS = (
    ("b", "y", "x", 1),
    ("a", "x", "b", -1),
    ("iA", "n", "b", 1),
    ("np", "iA", "x", -1),
    ("jA", "m", "a", -1),
    ("mp", "jA", "b", 1),
    ("x1", "b", "a", 1),
    ("x2", "x1", "mp", -1),
    ("j", "x2", "np", 1),
    ("y1", "a", "mp", -1),
    ("y2", "y1", "x2", -1),
    ("i", "y2", "np", 1),
    ("d", "j", "i", 1),
    ("e", "i", "d", -1),
    ("iC", "np", "d", 1),
    ("y", "iC", "i", -1),
    ("jC", "mp", "e", -1),
    ("x", "jC", "d", 1),
)
TANGLE_T_PATHS = (
    ("n", "iA", "np", "iC", "y", "b", "x1", "x2", "j", "d"),
    ("m", "jA", "mp", "jC", "x", "a", "y1", "y2", "i", "e"),
)


def tangle_t_fixture():
    """The tangle as a plain open diagram with the figure's arc names."""
    pa, pb = TANGLE_T_PATHS
    pos = _positions(pa, pb)
    cs = [encode_relation(l, b, o, op, pos, f"t{k + 1}") for k, (l, b, o, op) in enumerate(TANGLE_T_RELATIONS)]
    return make_diagram("T", cs, (pa[0], pa[-1], pb[0], pb[-1]), pa + pb)


def tangle_t():
    S = strand_from_moves(TANGLE_T_MOVES)
    return replace(S, diagram=replace(S.diagram, name="T"))


def example_strand():
    """A fixed small strand used as the worked example for knot closures."""
    return random_lom(4, 7)


def structure_fragment(kind):
    """One structure on its own, arcs named by template variables.

    The diagram has more than four free ends, so it is assembled without the
    open-strand validation; the solver only needs the crossings.
    """
    from .diagram import LinkDiagram

    paths = {
        "x": ("x", "x1", "x2", "x'") if kind.startswith("2") else ("x", "x'"),
        "y": ("y", "y1", "y2", "y'") if kind.startswith("2") else ("y", "y'"),
        "n": ("n", "i", "n'") if kind.startswith("1") else ("n",),
        "m": ("m", "j", "m'") if kind.startswith("1") else ("m",),
    }
    sides = SIDES[kind]
    pos = {}
    for fam, arcs in paths.items():
        for i, a in enumerate(arcs):
            pos[a] = (sides[fam] + fam, i)
    cs = []
    for ri, (l, b, o, op) in enumerate(RELATIONS[kind]):
        side, il = pos[l]
        _, ib = pos[b]
        oriented = side[0] == "a"
        if oriented == (il > ib):
            cs.append(Crossing(f"r{ri}", op, b, o, l))
        else:
            cs.append(Crossing(f"r{ri}", -op, l, o, b))
    arcs = tuple(a for fam in "xynm" for a in paths[fam])
    return LinkDiagram(f"structure {kind}", arcs, tuple(cs), ())
