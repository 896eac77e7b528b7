"""Finite quandles as Cayley tables, plus the algebra built on top of them."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np


class QuandleError(ValueError):
    pass


class AxiomViolation(QuandleError):
    def __init__(self, axiom, witness):
        self.axiom = axiom
        self.witness = witness
        super().__init__(f"axiom {axiom} fails at {witness}")


class ShapeError(QuandleError):
    pass


class NotMonic(QuandleError):
    pass


class NonUnitConstantTerm(QuandleError):
    pass


class SizeLimitExceeded(QuandleError):
    pass


class IndexOutOfRange(IndexError):
    pass


@dataclass(frozen=True, eq=False)
class QuandleTable:
    """A validated finite quandle. ``op[x][y]`` is x*y and ``inv[x][y]`` is x*^-1 y."""

    n: int
    op: tuple
    inv: tuple
    name: str = ""
    _arrays: dict = field(default_factory=dict, repr=False, compare=False)

    def __eq__(self, other):
        return isinstance(other, QuandleTable) and self.op == other.op

    def __hash__(self):
        return hash(self.op)

    def __len__(self):
        return self.n

    @property
    def op_array(self):
        if "op" not in self._arrays:
            self._arrays["op"] = np.array(self.op, dtype=np.int64).reshape(self.n, self.n)
        return self._arrays["op"]

    @property
    def inv_array(self):
        if "inv" not in self._arrays:
            self._arrays["inv"] = np.array(self.inv, dtype=np.int64).reshape(self.n, self.n)
        return self._arrays["inv"]

    def to_json(self):
        return {"n": self.n, "op": [list(r) for r in self.op]}

    def to_text(self):
        lines = [str(self.n)] + [" ".join(map(str, r)) for r in self.op]
        return "\n".join(lines) + "\n"


def _check_axioms(n, op):
    for x in range(n):
        if op[x][x] != x:
            return 1, (x,)
    for y in range(n):
        col = [op[x][y] for x in range(n)]
        if sorted(col) != list(range(n)):
            seen = {}
            for x, v in enumerate(col):
                if v in seen:
                    return 2, (seen[v], x, y)
                seen[v] = x
    for x in range(n):
        for y in range(n):
            xy = op[x][y]
            for z in range(n):
                if op[xy][z] != op[op[x][z]][op[y][z]]:
                    return 3, (x, y, z)
    return None


def build_quandle(table, n=None, name=""):
    """Validate a Cayley table and return the quandle with its inverse table."""
    rows = [list(r) for r in table]
    if n is None:
        n = len(rows)
    if len(rows) != n or any(len(r) != n for r in rows):
        raise ShapeError(f"expected a {n}x{n} table")
    for r in rows:
        for v in r:
            if not (isinstance(v, (int, np.integer)) and 0 <= v < n):
                raise ShapeError(f"entry {v!r} outside 0..{n - 1}")
    rows = [[int(v) for v in r] for r in rows]
    bad = _check_axioms(n, rows)
    if bad is not None:
        raise AxiomViolation(*bad)
    inv = [[0] * n for _ in range(n)]
    for x in range(n):
        for y in range(n):
            inv[rows[x][y]][y] = x
    return QuandleTable(n, tuple(map(tuple, rows)), tuple(map(tuple, inv)), name)


def _check_index(Q, *elems):
    for e in elems:
        if not 0 <= e < Q.n:
            raise IndexOutOfRange(f"element {e} not in 0..{Q.n - 1}")


def quandle_op(Q, x, y):
    _check_index(Q, x, y)
    return Q.op[x][y]


def quandle_inv_op(Q, x, y):
    _check_index(Q, x, y)
    return Q.inv[x][y]


def parse_quandle(text):
    """Read the plain text form: first line n, then n rows of the table."""
    lines = [ln.split() for ln in text.strip().splitlines() if ln.strip()]
    if not lines:
        raise ShapeError("empty quandle file")
    n = int(lines[0][0])
    return build_quandle([[int(v) for v in ln] for ln in lines[1:]], n)


def quandle_from_json(obj):
    return build_quandle(obj["op"], obj["n"], obj.get("name", ""))


# --- constructors -----------------------------------------------------------


def trivial_quandle(n):
    return build_quandle([[x] * n for x in range(n)], n, f"T{n}")


def dihedral_quandle(n):
    return build_quandle([[(2 * y - x) % n for y in range(n)] for x in range(n)], n, f"R{n}")


def conjugation_quandle(perms):
    """x*y = y^-1 x y on a conjugation-closed list of permutations (tuples)."""
    perms = [tuple(p) for p in perms]
    index = {p: i for i, p in enumerate(perms)}

    def compose(p, q):  # p after q
        return tuple(p[q[i]] for i in range(len(q)))

    def inverse(p):
        out = [0] * len(p)
        for i, v in enumerate(p):
            out[v] = i
        return tuple(out)

    table = [[index[compose(inverse(y), compose(x, y))] for y in perms] for x in perms]
    return build_quandle(table, len(perms), f"Conj{len(perms)}")


def parse_poly(spec):
    """Parse a low-to-high coefficient list such as "1,1" or "1,1,1"."""
    if isinstance(spec, str):
        return [int(c) for c in spec.replace(" ", "").split(",") if c != ""]
    return [int(c) for c in spec]


def alexander_quandle(n, h):
    """Z_n[t^±]/(h) with a*b = t·a + (1-t)·b.

    ``h`` is a low-to-high coefficient list (or "c0,c1,...,1"). Elements are
    coefficient vectors indexed base n, least significant coefficient first.
    """
    h = [c % n for c in parse_poly(h)]
    d = len(h) - 1
    if d < 1 or h[-1] != 1 % n:
        raise NotMonic(f"h={h} is not monic of degree >= 1 over Z_{n}")
    if np.gcd(h[0], n) != 1:
        raise NonUnitConstantTerm(f"constant term {h[0]} is not a unit mod {n}")

    def times_t(v):
        shifted = [0] + list(v)
        top = shifted.pop()
        return [(c - top * h[i]) % n for i, c in enumerate(shifted)]

    vecs = list(itertools.product(range(n), repeat=d))
    vecs = [tuple(reversed(v)) for v in vecs]  # little-endian ordering
    index = {v: i for i, v in enumerate(vecs)}
    size = len(vecs)
    table = [[0] * size for _ in range(size)]
    for a in vecs:
        for b in vecs:
            diff = [(x - y) % n for x, y in zip(a, b)]
            t_diff = times_t(diff)
            table[index[a]][index[b]] = index[tuple((u + v) % n for u, v in zip(t_diff, b))]
    label = "+".join(f"{c}t^{i}" for i, c in enumerate(h) if c)
    return build_quandle(table, size, f"Alex(Z{n},{label})")


def element_index(n, coeffs):
    """Little-endian base-n index of a coefficient vector."""
    return sum(c * n**i for i, c in enumerate(coeffs))


# --- reports ------------------------------------------------------------------


@dataclass
class MedialReport:
    is_medial: bool
    identity_failures: list = field(default_factory=list)
    medial_witness: tuple | None = None


def _first_false(mask):
    idx = np.argwhere(~mask)
    return None if len(idx) == 0 else tuple(int(v) for v in idx[0])


def _medial_identities(Q):
    """Evaluate the nine companion identities; yield (id, witness) for failures."""
    P, I = Q.op_array, Q.inv_array
    n = Q.n
    a = np.arange(n)
    x, y, z = np.meshgrid(a, a, a, indexing="ij")
    three = {
        1: (P[x, P[y, z]], P[P[x, y], P[x, z]]),
        3: (I[x, P[y, z]], P[I[x, y], I[x, z]]),
        5: (I[I[x, y], z], I[I[x, z], I[y, z]]),
        6: (I[x, I[y, z]], I[I[x, y], I[x, z]]),
        7: (P[I[x, y], z], I[P[x, z], P[y, z]]),
        8: (P[x, I[y, z]], I[P[x, y], P[x, z]]),
        9: (I[P[x, y], z], P[I[x, z], I[y, z]]),
    }
    x1, y1, x2, y2 = np.meshgrid(a, a, a, a, indexing="ij")
    four = {
        2: (P[I[x1, y1], I[x2, y2]], I[P[x1, x2], P[y1, y2]]),
        4: (I[I[x1, y1], I[x2, y2]], I[I[x1, x2], I[y1, y2]]),
    }
    for k in sorted({**three, **four}):
        lhs, rhs = three.get(k) or four[k]
        w = _first_false(lhs == rhs)
        if w is not None:
            yield k, w


def medial_report(Q):
    P = Q.op_array
    ab = P[:, :, None, None]
    cd = P[None, None, :, :]
    lhs = P[ab, cd]  # (a*b)*(c*d) indexed [a,b,c,d]
    rhs = lhs.transpose(0, 2, 1, 3)  # (a*c)*(b*d)
    witness = _first_false(lhs == rhs)
    if witness is not None:
        return MedialReport(False, [], witness)
    return MedialReport(True, list(_medial_identities(Q)))


def is_medial(Q):
    return medial_report(Q).is_medial


@dataclass
class TildeReport:
    is_equivalence: bool
    classes: list | None = None
    failure_witness: tuple | None = None


def tilde_report(Q):
    """Check whether a~b (a*b = a) is an equivalence relation."""
    n = Q.n
    rel = [[Q.op[a][b] == a for b in range(n)] for a in range(n)]
    for a in range(n):
        for b in range(n):
            if rel[a][b] and not rel[b][a]:
                return TildeReport(False, None, (a, b))
    for a in range(n):
        for b in range(n):
            if not rel[a][b]:
                continue
            for c in range(n):
                if rel[b][c] and not rel[a][c]:
                    return TildeReport(False, None, (a, b, c))
    classes, seen = [], set()
    for a in range(n):
        if a not in seen:
            cls = [b for b in range(n) if rel[a][b]]
            seen.update(cls)
            classes.append(cls)
    return TildeReport(True, classes)


def has_tilde_equivalence(Q):
    return tilde_report(Q).is_equivalence


# --- translation maps ---------------------------------------------------------


@dataclass(frozen=True)
class FMap:
    """Composite f_{x1 y1} ∘ ... ∘ f_{xk yk}; the last pair acts first."""

    pairs: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "pairs", tuple(tuple(p) for p in self.pairs))

    def inverse(self):
        return FMap(tuple((y, x) for x, y in reversed(self.pairs)))

    def then(self, outer):
        """The map ``outer ∘ self``."""
        return FMap(tuple(outer.pairs) + self.pairs)


def f_single(Q, x, y, q):
    return Q.op[Q.inv[q][x]][y]


def fmap_apply(Q, f, q):
    _check_index(Q, q, *(e for p in f.pairs for e in p))
    for x, y in reversed(f.pairs):
        q = Q.op[Q.inv[q][x]][y]
    return q


# --- enumeration --------------------------------------------------------------

FILTERS = ("all", "medial", "medial_with_tilde_equivalence")
MAX_ENUM_ORDER = 5


def _fixing_perms(n, y):
    return [p for p in itertools.permutations(range(n)) if p[y] == y]


def _raw_tables(n):
    """All labelled quandle tables on 0..n-1, as tuples of columns."""
    options = [_fixing_perms(n, y) for y in range(n)]
    cols = [None] * n

    def consistent(k):
        # right self-distributivity wherever every needed column is present:
        # R_z(R_y(x)) = R_{R_z(y)}(R_z(x))
        for z in range(k + 1):
            cz = cols[z]
            for y in range(k + 1):
                w = cz[y]
                if w > k or (y != k and z != k and w != k):
                    continue
                cy, cw = cols[y], cols[w]
                for x in range(n):
                    if cz[cy[x]] != cw[cz[x]]:
                        return False
        return True

    def rec(k):
        if k == n:
            yield tuple(cols)
            return
        for p in options[k]:
            cols[k] = p
            if consistent(k):
                yield from rec(k + 1)
        cols[k] = None

    yield from rec(0)


def _columns_to_rows(cols):
    n = len(cols)
    return tuple(tuple(cols[y][x] for y in range(n)) for x in range(n))


def canonical_form(table):
    """Lexicographically least relabelled table."""
    n = len(table)
    best = None
    for perm in itertools.permutations(range(n)):
        inv = [0] * n
        for i, p in enumerate(perm):
            inv[p] = i
        # relabel element i -> perm[i]: new[perm[x]][perm[y]] = perm[old[x][y]]
        cand = tuple(
            tuple(perm[table[inv[a]][inv[b]]] for b in range(n)) for a in range(n)
        )
        if best is None or cand < best:
            best = cand
    return best


def _passes(Q, filt):
    if filt == "all":
        return True
    if not is_medial(Q):
        return False
    return filt == "medial" or has_tilde_equivalence(Q)


def enumerate_quandles(n, filter="all", up_to_iso=True):
    """Yield quandles of order n in a deterministic order."""
    if filter not in FILTERS:
        raise ValueError(f"unknown filter {filter!r}; choose from {FILTERS}")
    if n > MAX_ENUM_ORDER:
        raise SizeLimitExceeded(f"enumeration is capped at order {MAX_ENUM_ORDER}")
    if n < 1:
        return
    tables = (_columns_to_rows(c) for c in _raw_tables(n))
    if up_to_iso:
        tables = sorted({canonical_form(t) for t in tables})
    else:
        tables = sorted(tables)
    for i, t in enumerate(tables):
        Q = build_quandle(t, n, f"Q{n}.{i}")
        if _passes(Q, filter):
            yield Q


def is_isomorphic(Q1, Q2):
    return Q1.n == Q2.n and canonical_form(Q1.op) == canonical_form(Q2.op)
