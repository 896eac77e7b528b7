"""Combinatorial oriented diagrams: signed crossings over a set of arcs."""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass


class DiagramError(ValueError):
    pass


class ParseError(DiagramError):
    def __init__(self, line, msg):
        self.line = line
        super().__init__(f"line {line}: {msg}")


class ValidationError(DiagramError):
    pass


class IllegalSite(DiagramError):
    pass


@dataclass(frozen=True)
class Crossing:
    id: str
    sign: int
    under_in: str
    over: str
    under_out: str

    def arcs(self):
        return (self.under_in, self.over, self.under_out)


@dataclass(frozen=True)
class CrossingRelation:
    """lhs = rhs_base * rhs_operand, or with *^-1 when ``use_inverse``."""

    lhs: str
    rhs_base: str
    rhs_operand: str
    use_inverse: bool

    def __str__(self):
        op = "*^-1" if self.use_inverse else "*"
        return f"{self.lhs} = {self.rhs_base} {op} {self.rhs_operand}"


@dataclass(frozen=True)
class LinkDiagram:
    name: str
    arcs: tuple
    crossings: tuple
    endpoints: tuple = ()

    @property
    def is_open(self):
        return bool(self.endpoints)

    def crossing(self, cid):
        for c in self.crossings:
            if c.id == cid:
                return c
        raise KeyError(cid)

    def renamed(self, mapping, name=None):
        """Apply an arc renaming (arcs that collide are merged)."""
        r = lambda a: mapping.get(a, a)
        arcs = tuple(dict.fromkeys(r(a) for a in self.arcs))
        cs = tuple(
            Crossing(c.id, c.sign, r(c.under_in), r(c.over), r(c.under_out))
            for c in self.crossings
        )
        return LinkDiagram(name or self.name, arcs, cs, tuple(r(a) for a in self.endpoints))


def make_diagram(name, crossings, endpoints=(), arcs=None):
    """Build and validate a diagram. Arc order follows first appearance."""
    crossings = tuple(crossings)
    seen = list(arcs or ())
    for c in crossings:
        seen.extend(c.arcs())
    seen.extend(endpoints)
    L = LinkDiagram(name, tuple(dict.fromkeys(seen)), crossings, tuple(endpoints))
    validate(L)
    return L


def validate(L):
    ids = Counter(c.id for c in L.crossings)
    dup = [i for i, k in ids.items() if k > 1]
    if dup:
        raise ValidationError(f"duplicate crossing id {dup[0]}")
    arcset = set(L.arcs)
    if len(arcset) != len(L.arcs):
        raise ValidationError("duplicate arc ids")
    for c in L.crossings:
        if c.sign not in (1, -1):
            raise ValidationError(f"crossing {c.id}: sign must be +1 or -1")
        for a in c.arcs():
            if a not in arcset:
                raise ValidationError(f"crossing {c.id}: dangling arc {a}")
    for a in L.endpoints:
        if a not in arcset:
            raise ValidationError(f"endpoint {a} is not an arc")
    if L.endpoints and len(L.endpoints) != 4:
        raise ValidationError("an open diagram needs exactly 4 endpoint roles")
    ins = Counter(c.under_in for c in L.crossings)
    outs = Counter(c.under_out for c in L.crossings)
    ends = Counter(L.endpoints)
    for a in L.arcs:
        i, o = ins[a], outs[a]
        if i > 1 or o > 1:
            raise ValidationError(f"arc {a} has {o} incoming and {i} outgoing undercrossings")
        if L.endpoints:
            if i + o + ends[a] != 2:
                raise ValidationError(f"arc {a} does not have exactly two ends")
        elif i != o:
            raise ValidationError(f"arc {a} has a free end in a closed diagram")


def crossing_relations(L):
    return [CrossingRelation(c.under_out, c.under_in, c.over, c.sign < 0) for c in L.crossings]


def components(L):
    """Partition arcs into components by under_in -> under_out chaining."""
    parent = {a: a for a in L.arcs}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for c in L.crossings:
        ra, rb = find(c.under_in), find(c.under_out)
        if ra != rb:
            parent[rb] = ra
    groups = {}
    for a in L.arcs:
        groups.setdefault(find(a), []).append(a)
    return list(groups.values())


def component_count(L):
    return len(components(L))


# --- text and JSON ------------------------------------------------------------


def serialize(L):
    lines = [f"link {L.name}"]
    lines += [f"arc {a}" for a in L.arcs]
    lines += [f"endpoint {a}" for a in L.endpoints]
    for c in L.crossings:
        s = "+" if c.sign > 0 else "-"
        lines.append(f"crossing {c.id} {s} under_in={c.under_in} over={c.over} under_out={c.under_out}")
    return "\n".join(lines) + "\n"


def _parse_lines(lines, start=1):
    name, crossings, endpoints, arcs = "", [], [], []
    for no, raw in enumerate(lines, start):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        head = tok[0]
        if head == "link":
            name = " ".join(tok[1:])
        elif head == "endpoint" and len(tok) == 2:
            endpoints.append(tok[1])
        elif head == "arc" and len(tok) == 2:
            arcs.append(tok[1])
        elif head == "crossing" and len(tok) == 6:
            if tok[2] not in "+-" or len(tok[2]) != 1:
                raise ParseError(no, f"bad sign {tok[2]!r}")
            fields = {}
            for kv in tok[3:]:
                k, eq, v = kv.partition("=")
                if not eq or not v:
                    raise ParseError(no, f"bad field {kv!r}")
                fields[k] = v
            if set(fields) != {"under_in", "over", "under_out"}:
                raise ParseError(no, "crossing needs under_in, over and under_out")
            crossings.append(
                Crossing(tok[1], 1 if tok[2] == "+" else -1,
                         fields["under_in"], fields["over"], fields["under_out"])
            )
        else:
            raise ParseError(no, f"unrecognised record {line!r}")
    return make_diagram(name, crossings, endpoints, arcs)


def parse_diagram(text):
    lines = text.splitlines()
    body = []
    for ln in lines:
        if ln.strip() == "moves":
            break
        body.append(ln)
    return _parse_lines(body)


def diagram_to_json(L):
    return {
        "name": L.name,
        "arcs": list(L.arcs),
        "endpoints": list(L.endpoints),
        "crossings": [
            {"id": c.id, "sign": c.sign, "under_in": c.under_in, "over": c.over, "under_out": c.under_out}
            for c in L.crossings
        ],
    }


def diagram_from_json(obj):
    if isinstance(obj, str):
        obj = json.loads(obj)
    cs = [Crossing(d["id"], int(d["sign"]), d["under_in"], d["over"], d["under_out"]) for d in obj["crossings"]]
    return make_diagram(obj.get("name", ""), cs, obj.get("endpoints", ()), obj.get("arcs", ()))


def isomorphic_relabel(L1, L2):
    """Find an arc bijection carrying L1's crossing multiset onto L2's, or None.

    Crossing ids are ignored. Backtracking over crossings; fine for small fixtures.
    """
    if len(L1.arcs) != len(L2.arcs) or len(L1.crossings) != len(L2.crossings):
        return None
    c1 = list(L1.crossings)
    c2 = list(L2.crossings)
    used = [False] * len(c2)
    fwd, bwd = {}, {}

    def bind(pairs):
        added = []
        for a, b in pairs:
            if a in fwd:
                if fwd[a] != b:
                    break
            elif b in bwd:
                break
            else:
                fwd[a], bwd[b] = b, a
                added.append(a)
        else:
            return added
        for a in added:
            del bwd[fwd.pop(a)]
        return None

    def rec(i):
        if i == len(c1):
            return True
        x = c1[i]
        for j, y in enumerate(c2):
            if used[j] or x.sign != y.sign:
                continue
            added = bind(zip(x.arcs(), y.arcs()))
            if added is None:
                continue
            used[j] = True
            if rec(i + 1):
                return True
            used[j] = False
            for a in added:
                del bwd[fwd.pop(a)]
        return False

    if not rec(0):
        return None
    rest1 = [a for a in L1.arcs if a not in fwd]
    rest2 = [b for b in L2.arcs if b not in bwd]
    if len(rest1) != len(rest2):
        return None
    fwd.update(zip(rest1, rest2))
    if Counter(fwd[a] for a in L1.endpoints) != Counter(L2.endpoints):
        return None
    return fwd


# --- Reidemeister moves -------------------------------------------------------


def _fresh(L, base):
    taken = set(L.arcs)
    i = 1
    while f"{base}_{i}" in taken:
        i += 1
    return f"{base}_{i}"


def _fresh_id(L, base):
    taken = {c.id for c in L.crossings}
    i = 1
    while f"{base}{i}" in taken:
        i += 1
    return f"{base}{i}"


def _retarget_in(crossings, old, new):
    """Move the under_in role of ``old`` (its outgoing end) onto ``new``."""
    return [
        Crossing(c.id, c.sign, new, c.over, c.under_out) if c.under_in == old else c
        for c in crossings
    ]


@dataclass(frozen=True)
class R1Site:
    arc: str
    sign: int = 1
    over_self: str = "before"  # the loop passes over the piece before or after the kink


@dataclass(frozen=True)
class R2Site:
    over: str
    under: str
    sign: int = 1


@dataclass(frozen=True)
class R3Site:
    first: str   # crossing where the bottom strand passes under X
    second: str  # next crossing along the bottom strand, under Y
    third: str   # crossing where Y's strand passes under X


@dataclass(frozen=True)
class RemoveSite:
    crossings: tuple


def _split_arc(L, arc, sign, over_choice, cid):
    """Insert one crossing at the outgoing end of ``arc``."""
    new = _fresh(L, arc)
    cs = _retarget_in(L.crossings, arc, new)
    ends = list(L.endpoints)
    # an arc with a free outgoing end: the free end moves to the new piece
    if L.endpoints and not any(c.under_in == arc for c in L.crossings):
        k = _outgoing_endpoint_slot(L, arc)
        ends[k] = new
    over = over_choice(arc, new)
    cs.append(Crossing(cid, sign, arc, over, new))
    return new, cs, ends


def _outgoing_endpoint_slot(L, arc):
    # an arc with two free ends lists itself twice; the later slot is the outgoing end
    return [i for i, a in enumerate(L.endpoints) if a == arc][-1]


def apply_reidemeister(L, move, site, direction="add"):
    move = move.upper()
    if (move, direction) == ("R1", "add"):
        return _r1_add(L, site)
    if (move, direction) == ("R1", "remove"):
        return _r1_remove(L, site)
    if (move, direction) == ("R2", "add"):
        return _r2_add(L, site)
    if (move, direction) == ("R2", "remove"):
        return _r2_remove(L, site)
    if move == "R3":
        return _r3(L, site)
    raise IllegalSite(f"unknown move {move} {direction}")


def _r1_add(L, site):
    if site.arc not in L.arcs:
        raise IllegalSite(f"no arc {site.arc}")
    cid = _fresh_id(L, "k")
    if not L.endpoints and not any(c.under_in == site.arc for c in L.crossings):
        # a circle with no undercrossings: the kink closes onto the same arc
        cs = L.crossings + (Crossing(cid, site.sign, site.arc, site.arc, site.arc),)
        return make_diagram(L.name, cs, (), L.arcs)
    pick = (lambda a, b: a) if site.over_self == "before" else (lambda a, b: b)
    new, cs, ends = _split_arc(L, site.arc, site.sign, pick, cid)
    return make_diagram(L.name, cs, ends, L.arcs + (new,))


def _merge(L, crossings, keep, drop, ends=None):
    ends = list(L.endpoints if ends is None else ends)
    r = lambda a: keep if a == drop else a
    cs = [Crossing(c.id, c.sign, r(c.under_in), r(c.over), r(c.under_out)) for c in crossings]
    arcs = [a for a in L.arcs if a != drop]
    return make_diagram(L.name, cs, [r(a) for a in ends], arcs)


def _r1_remove(L, site):
    (cid,) = site.crossings
    try:
        c = L.crossing(cid)
    except KeyError:
        raise IllegalSite(f"no crossing {cid}") from None
    if c.over not in (c.under_in, c.under_out):
        raise IllegalSite(f"crossing {cid} is not a kink")
    rest = [d for d in L.crossings if d.id != cid]
    if c.under_in == c.under_out:
        return make_diagram(L.name, rest, L.endpoints, L.arcs)
    return _merge(L, rest, c.under_in, c.under_out)


def _r2_add(L, site):
    if site.over not in L.arcs or site.under not in L.arcs:
        raise IllegalSite("R2 site names unknown arcs")
    if site.over == site.under:
        raise IllegalSite("an arc cannot be pushed under itself")
    if not L.endpoints and not any(c.under_in == site.under for c in L.crossings):
        raise IllegalSite("add a kink to a bare circle before pushing it under")
    c1, c2 = _fresh_id(L, "r"), None
    mid, cs, ends = _split_arc(L, site.under, site.sign, lambda a, b: site.over, c1)
    L1 = LinkDiagram(L.name, L.arcs + (mid,), tuple(cs), tuple(ends))
    c2 = _fresh_id(L1, "r")
    out, cs, ends = _split_arc(L1, mid, -site.sign, lambda a, b: site.over, c2)
    return make_diagram(L.name, cs, ends, L1.arcs + (out,))


def _r2_remove(L, site):
    try:
        c1, c2 = (L.crossing(i) for i in site.crossings)
    except (KeyError, ValueError):
        raise IllegalSite("R2 removal needs two existing crossings") from None
    if c1.under_out != c2.under_in:
        c1, c2 = c2, c1
    mid = c1.under_out
    if mid != c2.under_in or c1.over != c2.over or c1.sign == c2.sign:
        raise IllegalSite("crossings do not form a bigon")
    if mid == c1.under_in or any(c.over == mid for c in L.crossings):
        raise IllegalSite("the middle arc passes over something")
    rest = [c for c in L.crossings if c.id not in (c1.id, c2.id)]
    L1 = LinkDiagram(L.name, tuple(a for a in L.arcs if a != mid), tuple(rest), L.endpoints)
    if c1.under_in == c2.under_out:
        return make_diagram(L.name, rest, L.endpoints, L1.arcs)
    return _merge(L1, rest, c1.under_in, c2.under_out)


def _r3(L, site):
    try:
        c1, c2, c3 = (L.crossing(i) for i in (site.first, site.second, site.third))
    except KeyError:
        raise IllegalSite("R3 site names unknown crossings") from None
    X, Y, mid = c1.over, c2.over, c1.under_out
    if len({c1.id, c2.id, c3.id}) < 3 or c2.under_in != mid or c3.over != X or X == Y:
        raise IllegalSite("not a triangle")
    if any(c.over == mid for c in L.crossings):
        raise IllegalSite("the bottom middle arc passes over something")
    # sliding X across the Y crossing: Y's partner on the other side of c3
    if c3.under_out == Y and c3.sign == c1.sign:
        Y2 = c3.under_in
    elif c3.under_in == Y and c3.sign == -c1.sign:
        Y2 = c3.under_out
    else:
        raise IllegalSite("orientations do not allow the slide")
    cs = []
    for c in L.crossings:
        if c.id == c1.id:
            cs.append(Crossing(c1.id, c2.sign, c1.under_in, Y2, mid))
        elif c.id == c2.id:
            cs.append(Crossing(c2.id, c1.sign, mid, X, c2.under_out))
        else:
            cs.append(c)
    return make_diagram(L.name, cs, L.endpoints, L.arcs)


def r3_sites(L):
    """All triangle configurations accepted by the R3 move."""
    by_in = {c.under_in: c for c in L.crossings}
    over_arcs = {c.over for c in L.crossings}
    out = []
    for c1 in L.crossings:
        mid = c1.under_out
        c2 = by_in.get(mid)
        if c2 is None or c2 is c1 or mid in over_arcs or c1.over == c2.over:
            continue
        for c3 in L.crossings:
            if c3.over != c1.over or c3.id in (c1.id, c2.id):
                continue
            if (c3.under_out == c2.over and c3.sign == c1.sign) or (
                c3.under_in == c2.over and c3.sign == -c1.sign
            ):
                out.append(R3Site(c1.id, c2.id, c3.id))
    return out


def r1_removal_sites(L):
    return [RemoveSite((c.id,)) for c in L.crossings if c.over in (c.under_in, c.under_out)]


def r2_removal_sites(L):
    over_arcs = {c.over for c in L.crossings}
    by_in = {c.under_in: c for c in L.crossings}
    out = []
    for c1 in L.crossings:
        c2 = by_in.get(c1.under_out)
        if (c2 is not None and c2 is not c1 and c1.over == c2.over and c1.sign != c2.sign
                and c1.under_out not in over_arcs and c1.under_out != c1.under_in):
            out.append(RemoveSite((c1.id, c2.id)))
    return out
