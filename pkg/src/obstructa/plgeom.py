"""Exact piecewise-linear geometry over the rationals.

A PL map assigns a rational point to every vertex of a complex and extends
affinely over simplices.  Everything here is computed with Fractions: signed
intersections of simplex pairs, almost-embedding validation (images of
vertex-disjoint simplices must not meet), the direction-counting 3-cochain
on staircase simplices of two-fold deleted products, and linking numbers of
a 2-cycle with a 1-cycle in 4-space via an exact cone filling.

Configurations that a perturbation would change (touching boundaries,
non-transverse crossings) raise DegenerateGeometryError rather than guess.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .errors import DegenerateGeometryError, InvalidComplexError


def frac(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise InvalidComplexError(f"not an exact rational: {x!r}")


def vec(xs):
    return tuple(frac(x) for x in xs)


def vsub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def det(rows):
    """Determinant by fraction-free-ish Gaussian elimination on Fractions."""
    n = len(rows)
    m = [list(r) for r in rows]
    sign = 1
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            sign = -sign
        for i in range(c + 1, n):
            if m[i][c]:
                f = m[i][c] / m[c][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    out = Fraction(sign)
    for i in range(n):
        out *= m[i][i]
    return out


def rref_solve(rows, rhs):
    """Solve rows . x = rhs exactly.

    Returns one of
      ("none", None, None)            inconsistent,
      ("unique", x, None)             a single solution,
      ("many", x0, basis)             particular solution plus a nullspace
                                      basis spanning the solution set.
    """
    ncols = len(rows[0]) if rows else 0
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    nrows = len(aug)
    piv = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, nrows) if aug[i][c] != 0), None)
        if p is None:
            continue
        aug[r], aug[p] = aug[p], aug[r]
        lead = aug[r][c]
        aug[r] = [v / lead for v in aug[r]]
        for i in range(nrows):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[r])]
        piv.append(c)
        r += 1
        if r == nrows:
            break
    for i in range(r, nrows):
        if aug[i][ncols] != 0:
            return "none", None, None
    x0 = [Fraction(0)] * ncols
    for i, c in enumerate(piv):
        x0[c] = aug[i][ncols]
    free = [c for c in range(ncols) if c not in piv]
    if not free:
        return "unique", x0, None
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for i, c in enumerate(piv):
            v[c] = -aug[i][fc]
        basis.append(v)
    return "many", x0, basis


def _halfspaces_feasible(ineqs, nvars):
    """Feasibility of {y : coeffs . y + const >= 0 for all} by
    Fourier-Motzkin elimination.  Sizes here are tiny (a handful of
    inequalities in at most a few variables)."""
    ineqs = [(list(c), k) for c, k in ineqs]
    for v in range(nvars - 1, -1, -1):
        lower, upper, rest = [], [], []
        for c, k in ineqs:
            a = c[v]
            if a > 0:
                lower.append((c, k))
            elif a < 0:
                upper.append((c, k))
            else:
                rest.append((c, k))
        new = rest
        for cl, kl in lower:
            for cu, ku in upper:
                al, au = cl[v], -cu[v]
                c = [au * x + al * y for x, y in zip(cl, cu)]
                c[v] = Fraction(0)
                new.append((c, au * kl + al * ku))
        ineqs = new
    return all(k >= 0 for c, k in ineqs)


class PLMap:
    """Vertex -> rational point assignment, extended affinely."""

    def __init__(self, points, ambient):
        self.ambient = int(ambient)
        self.points = {}
        for v, p in points.items():
            pt = vec(p)
            if len(pt) != self.ambient:
                raise InvalidComplexError(
                    f"vertex {v} mapped to dimension {len(pt)}, expected {self.ambient}")
            self.points[int(v)] = pt

    def point(self, v):
        try:
            return self.points[v]
        except KeyError:
            raise InvalidComplexError(f"vertex {v} has no image point") from None

    def simplex_points(self, s):
        return [self.point(v) for v in s]

    def covers(self, complex_):
        return all(v in self.points for v in complex_.vertices())

    @classmethod
    def from_json(cls, obj):
        if "coords" in obj:
            try:
                return cls(obj["coords"], obj["d"])
            except KeyError as e:
                raise InvalidComplexError(f"PL map JSON missing {e}") from e
        try:
            return cls(obj["points"], obj["ambient"])
        except KeyError as e:
            raise InvalidComplexError(f"PL map JSON missing {e}") from e

    def to_json(self):
        return {"d": self.ambient,
                "coords": {str(v): [str(x) for x in p]
                           for v, p in sorted(self.points.items())}}


def moment_curve_map(complex_, ambient, params=None):
    """Vertices on the moment curve t -> (t, t^2, ..., t^ambient).

    By default the vertices receive parameters 1, 2, 3, ... in vertex order.
    A custom rational parameter list (same order) may be supplied; repeated
    parameters are rejected since they would collapse vertices.
    """
    verts = complex_.vertices()
    if params is None:
        ts = [Fraction(k + 1) for k in range(len(verts))]
    else:
        ts = [frac(t) for t in params]
        if len(ts) != len(verts):
            raise InvalidComplexError(
                f"{len(ts)} parameters for {len(verts)} vertices")
        if len(set(ts)) != len(ts):
            raise InvalidComplexError("moment curve parameters must be distinct")
    pts = {}
    for v, t in zip(verts, ts):
        pts[v] = tuple(t ** (k + 1) for k in range(ambient))
    return PLMap(pts, ambient)


# ---------------------------------------------------------------------------
# pairwise intersections
# ---------------------------------------------------------------------------

def intersection_sign(pa, pb):
    """Signed transverse intersection of two open simplices whose dimensions
    fill the ambient space.  Returns +1/-1 for one interior crossing, 0 for
    none; boundary or non-transverse contact raises DegenerateGeometryError.

    The sign is that of det of the edge vectors of the first simplex followed
    by those of the second, taken from each least vertex.
    """
    dim = len(pa[0])
    p = len(pa) - 1
    q = len(pb) - 1
    if p + q != dim:
        raise InvalidComplexError("simplex dimensions do not fill the ambient space")
    cols = [vsub(pa[i], pa[0]) for i in range(1, p + 1)]
    cols += [tuple(-x for x in vsub(pb[j], pb[0])) for j in range(1, q + 1)]
    rows = [[cols[k][c] for k in range(dim)] for c in range(dim)]
    rhs = [pb[0][c] - pa[0][c] for c in range(dim)]
    kind, x, _ = rref_solve(rows, rhs)
    if kind == "none":
        return 0
    if kind == "many":
        raise DegenerateGeometryError("simplex pair meets non-transversally")
    s = x[:p]
    t = x[p:]
    coords = list(s) + [1 - sum(s)] + list(t) + [1 - sum(t)]
    if any(c < 0 for c in coords):
        return 0
    if any(c == 0 for c in coords):
        raise DegenerateGeometryError("simplex pair touches on a boundary")
    full = [vsub(pa[i], pa[0]) for i in range(1, p + 1)]
    full += [vsub(pb[j], pb[0]) for j in range(1, q + 1)]
    d = det([[full[k][c] for k in range(dim)] for c in range(dim)])
    if d == 0:
        raise DegenerateGeometryError("intersection with degenerate frame")
    return 1 if d > 0 else -1


@dataclass
class IntersectionReport:
    """Transverse meeting data for one pair of complementary-dimension
    open simplices: the crossing points with signs, and their signed total."""
    pair: tuple
    points: list
    total: int

    def to_json(self):
        return {"pair": [list(s) for s in self.pair],
                "points": [{"point": [str(x) for x in p], "sign": sg}
                           for p, sg in self.points],
                "total": self.total}


def simplex_pair_intersection(pa, pb, pair=None):
    """Like intersection_sign but reports the crossing point as well.

    Linear simplices in complementary dimension cross at most once, so the
    point list has length 0 or 1.
    """
    sign = intersection_sign(pa, pb)
    points = []
    if sign != 0:
        dim = len(pa[0])
        p = len(pa) - 1
        cols = [vsub(pa[i], pa[0]) for i in range(1, p + 1)]
        cols += [tuple(-x for x in vsub(pb[j], pb[0])) for j in range(1, len(pb))]
        rows = [[cols[k][c] for k in range(dim)] for c in range(dim)]
        rhs = [pb[0][c] - pa[0][c] for c in range(dim)]
        _, x, _ = rref_solve(rows, rhs)
        pt = list(pa[0])
        for i in range(1, p + 1):
            for c in range(dim):
                pt[c] += x[i - 1] * (pa[i][c] - pa[0][c])
        points.append((tuple(pt), sign))
    return IntersectionReport(pair=pair if pair is not None else (tuple(), tuple()),
                              points=points, total=sign)


def closed_simplices_meet(pa, pb):
    """Whether two closed simplices intersect, decided exactly.

    Works in any dimensions; underdetermined contact is resolved by exact
    linear-inequality feasibility rather than reported as degenerate.
    """
    dim = len(pa[0])
    np_, nq = len(pa), len(pb)
    ncols = np_ + nq
    rows = []
    rhs = []
    for c in range(dim):
        rows.append([pa[i][c] for i in range(np_)] + [-pb[j][c] for j in range(nq)])
        rhs.append(Fraction(0))
    rows.append([Fraction(1)] * np_ + [Fraction(0)] * nq)
    rhs.append(Fraction(1))
    rows.append([Fraction(0)] * np_ + [Fraction(1)] * nq)
    rhs.append(Fraction(1))
    kind, x0, basis = rref_solve(rows, rhs)
    if kind == "none":
        return False
    if kind == "unique":
        return all(v >= 0 for v in x0)
    ineqs = []
    for k in range(ncols):
        ineqs.append(([b[k] for b in basis], x0[k]))
    return _halfspaces_feasible(ineqs, len(basis))


def validate_almost_embedding(complex_, plmap):
    """All pairs of vertex-disjoint simplices must have disjoint images.

    Returns the list of violating pairs (empty for an almost-embedding).
    """
    if not plmap.covers(complex_):
        raise InvalidComplexError("PL map does not cover all vertices")
    sims = list(complex_.all_simplices())
    bad = []
    for i, s in enumerate(sims):
        ps = plmap.simplex_points(s)
        vs = set(s)
        for t in sims[i + 1:]:
            if vs & set(t):
                continue
            if closed_simplices_meet(ps, plmap.simplex_points(t)):
                bad.append((s, t))
    return bad


# ---------------------------------------------------------------------------
# direction-counting cochain on staircase 3-simplices
# ---------------------------------------------------------------------------

class DirectionCounter:
    """U(s): signed count of pairs (x, y) in a staircase 3-simplex of a
    two-fold deleted product with f(y) - f(x) a positive multiple of a fixed
    direction.

    A staircase 3-simplex is a chain of four grid vertices (u, v); the
    difference map is affine in the barycentric coordinates, so the count is
    a single 4x4 rational solve.  Sign is the orientation determinant of the
    difference map's partials.  Solutions on the parameter boundary, at the
    zero multiple, or along a non-transverse direction raise
    DegenerateGeometryError.
    """

    def __init__(self, plmap, direction):
        if plmap.ambient != 4:
            raise InvalidComplexError("direction counting expects ambient dimension 4")
        self.plmap = plmap
        self.direction = vec(direction)
        if len(self.direction) != 4 or all(x == 0 for x in self.direction):
            raise InvalidComplexError("direction must be a nonzero 4-vector")
        self._cache = {}

    def __call__(self, simplex):
        if len(simplex) != 4:
            raise InvalidComplexError("expected a chain of four grid vertices")
        key = tuple(simplex)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        f = self.plmap.point
        c = [vsub(f(v), f(u)) for (u, v) in simplex]
        cols = [vsub(c[i], c[0]) for i in (1, 2, 3)]
        cols.append(tuple(-x for x in self.direction))
        rows = [[cols[k][r] for k in range(4)] for r in range(4)]
        rhs = [-c[0][r] for r in range(4)]
        kind, x, basis = rref_solve(rows, rhs)
        if kind == "none":
            val = 0
        elif kind == "many":
            zero, one = Fraction(0), Fraction(1)
            funcs = [((one, zero, zero, zero), zero),
                     ((zero, one, zero, zero), zero),
                     ((zero, zero, one, zero), zero),
                     ((-one, -one, -one, zero), one),
                     ((zero, zero, zero, one), zero)]
            if _family_touches_closed(x, basis, funcs):
                raise DegenerateGeometryError(
                    "direction line meets a staircase simplex non-transversally")
            val = 0
        else:
            mu = x[:3]
            t = x[3]
            lam0 = 1 - sum(mu)
            bary = list(mu) + [lam0]
            if t < 0 or any(b < 0 for b in bary):
                val = 0
            elif t == 0:
                raise DegenerateGeometryError(
                    "images of disjoint simplices meet (zero multiple)")
            elif any(b == 0 for b in bary):
                raise DegenerateGeometryError(
                    "direction line exits through a simplex boundary")
            else:
                frame = [vsub(c[i], c[0]) for i in (1, 2, 3)]
                frame.append(tuple(-x_ for x_ in self.direction))
                d = det([[frame[k][r] for k in range(4)] for r in range(4)])
                val = 1 if d > 0 else -1
        self._cache[key] = val
        return val


# ---------------------------------------------------------------------------
# linking numbers in 4-space
# ---------------------------------------------------------------------------

def _cone_apex(k):
    t = Fraction(97 + k)
    return (t, t * t + 1, t ** 3 + 2, t ** 4 + 3)


def linking_number(plmap, cycle2, cycle1, max_tries=64):
    """Linking number in 4-space of a 2-cycle with a disjoint 1-cycle.

    The 1-cycle is filled with an exact cone over a far apex; the linking
    number is the signed intersection count of the 2-cycle with that cone.
    Apexes are retried deterministically past degenerate positions.
    """
    last = None
    for k in range(max_tries):
        apex = _cone_apex(k)
        try:
            total = 0
            for tri, zc in cycle2.items():
                pt = plmap.simplex_points(tri)
                for edge, wc in cycle1.items():
                    pe = plmap.simplex_points(edge)
                    cone = [apex, pe[0], pe[1]]
                    s = intersection_sign(pt, cone)
                    if s:
                        total += zc * wc * s
            return total
        except DegenerateGeometryError as e:
            last = e
            continue
    raise DegenerateGeometryError(
        f"no generic cone apex found after {max_tries} tries: {last}")


def _family_touches_closed(x0, basis, funcs):
    """Whether some point of the affine family x0 + span(basis) satisfies
    every functional (coeffs, const) with coeffs . x + const >= 0."""
    ineqs = []
    for coeffs, const in funcs:
        c = [sum(a * b[k] for k, a in enumerate(coeffs)) for b in basis]
        k0 = const + sum(a * x0[k] for k, a in enumerate(coeffs))
        ineqs.append((c, k0))
    return _halfspaces_feasible(ineqs, len(basis))


def _codirected_sign(pa, pe, direction):
    # one (triangle, edge) pair: x in open triangle, y in open edge,
    # y - x = t * direction with t > 0; sign orients the swept surface
    a1 = vsub(pa[1], pa[0])
    a2 = vsub(pa[2], pa[0])
    b1 = vsub(pe[1], pe[0])
    cols = [a1, a2, tuple(-x for x in b1), direction]
    rows = [[cols[k][r] for k in range(4)] for r in range(4)]
    rhs = [pe[0][r] - pa[0][r] for r in range(4)]
    kind, x, basis = rref_solve(rows, rhs)
    if kind == "none":
        return 0
    if kind == "many":
        # rank-deficient: a whole family solves the linear system; count 0
        # when it stays outside the closed parameter region, else degenerate
        zero, one = Fraction(0), Fraction(1)
        funcs = [((one, zero, zero, zero), zero),
                 ((zero, one, zero, zero), zero),
                 ((-one, -one, zero, zero), one),
                 ((zero, zero, one, zero), zero),
                 ((zero, zero, -one, zero), one),
                 ((zero, zero, zero, one), zero)]
        if _family_touches_closed(x, basis, funcs):
            raise DegenerateGeometryError(
                "direction line meets a simplex pair non-transversally")
        return 0
    s1, s2, w, t = x
    bary = [s1, s2, 1 - s1 - s2, w, 1 - w]
    if t < 0 or any(b < 0 for b in bary):
        return 0
    if t == 0:
        raise DegenerateGeometryError("cycle images meet (zero multiple)")
    if any(b == 0 for b in bary):
        raise DegenerateGeometryError("direction line exits through a boundary")
    frame = [a1, a2, b1, tuple(-x_ for x_ in direction)]
    d = det([[frame[k][r] for k in range(4)] for r in range(4)])
    if d == 0:
        raise DegenerateGeometryError("co-directed crossing with degenerate frame")
    return 1 if d > 0 else -1


def gauss_linking_2_1(plmap, cycle2, cycle1, direction):
    """Linking number of a 2-cycle with a 1-cycle via co-directed pairs.

    Counts, with signs, pairs (x, y) with x on the 2-cycle, y on the 1-cycle
    and y - x a positive multiple of the direction.  Equivalent to
    intersecting the 2-cycle with the surface swept from the 1-cycle, so it
    agrees with the cone-filling route; a non-generic direction raises
    DegenerateGeometryError and the caller should perturb it.
    """
    e = vec(direction)
    if len(e) != 4 or all(x == 0 for x in e):
        raise InvalidComplexError("direction must be a nonzero 4-vector")
    total = 0
    for tri, zc in cycle2.items():
        if zc == 0:
            continue
        pt = plmap.simplex_points(tri)
        for edge, wc in cycle1.items():
            if wc == 0:
                continue
            s = _codirected_sign(pt, plmap.simplex_points(edge), e)
            if s:
                total += zc * wc * s
    return total


# ---------------------------------------------------------------------------
# serialization helpers
# ---------------------------------------------------------------------------

def plmap_from_file(path):
    with open(path) as f:
        obj = json.load(f)
    return PLMap.from_json(obj), obj


def direction_from_json(obj, default=("0", "0", "0", "1")):
    raw = obj.get("direction", list(default)) if isinstance(obj, dict) else list(default)
    return vec(raw)
