"""Third-order obstruction from linking data on three-fold deleted products.

The degree-3 cochain U counts co-directed point pairs of a map to 4-space
(or encodes prescribed linking numbers); combining its three pairwise
pullbacks to the three-fold deleted product gives a degree-6 cocycle.
Pairing that against a product 6-cycle sphere x sphere x torus detects
classes blocking a third-order disjunction; the two-by-two determinant of
linking numbers is an independent shortcut for the same value.  Triple
products of four-fold pullbacks give the degree-8 partition cochains.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .chains import add_into, diff
from .errors import CertificateError, DegenerateGeometryError, InvalidComplexError
from .plgeom import DirectionCounter, validate_almost_embedding, vec
from .products import (DeletedProduct, cell_boundary, chain_simplices,
                       coboundary_cochain, ez_chain, materialize,
                       project_chain, pullback_pair, tensor_cup)
from .simplicial import tagged_cycle
from .zlinalg import (Certificate, EquivariantComplex, NONZERO_BY_PAIRING,
                      ZERO_WITH_PRIMITIVE, class_status, equivariant_cohomology,
                      plain_complex, solve_integer)

# Loop tag order feeding the determinant slots; fixed so that on the stock
# torus instance the cup pairing of the two loop duals against the torus
# cycle is +1, which makes the determinant equal the honest cochain pairing
# including sign.
GAMMA_ORDER = (1, 0)


# ---------------------------------------------------------------------------
# the staircase triangulation as a simplicial-cell complex
# ---------------------------------------------------------------------------

class Triangulation:
    """Simplices of the staircase triangulation of a deleted product.

    A k-simplex is a strictly increasing chain of k+1 grid vertices inside
    some product cell; chains shared by neighbouring cells are identified by
    their vertex tuples, so each simplex is listed once.  Carries no group
    action; suitable for plain cochain solves.
    """

    def __init__(self, dp):
        self.dp = dp
        self._cells = {}
        degs = dp.degrees()
        top = max(degs) if degs else 0
        for k in range(top + 1):
            seen = set()
            for d in degs:
                if d < k:
                    continue
                for cell in dp.cells_of_dim(d):
                    for s in chain_simplices(cell, k + 1):
                        seen.add(s)
            self._cells[k] = sorted(seen)

    def degrees(self):
        return sorted(self._cells)

    def cells_of_dim(self, k):
        return self._cells.get(k, [])

    def boundary(self, simplex):
        out = {}
        for i in range(len(simplex)):
            add_into(out, simplex[:i] + simplex[i + 1:], (-1) ** i)
        return out


class SymmetricTriangulation(Triangulation):
    """Staircase triangulation with the coordinate-permuting action.

    Permuting the factors of every grid vertex is an automorphism of the
    grid order, so chains map to chains in order; the action is free because
    grid vertices have pairwise disjoint coordinates.
    """

    def group(self):
        return self.dp.group()

    def act(self, perm, simplex):
        moved = tuple(tuple(g[p] for p in perm) for g in simplex)
        return moved, 1


# ---------------------------------------------------------------------------
# degree-3 cochains on the triangulated two-fold deleted product
# ---------------------------------------------------------------------------

FROM_GEOMETRY = "from_geometry"
USER_SUPPLIED = "user_supplied"


@dataclass
class GaussCocycle:
    """Degree-3 integer cochain on the triangulated two-fold deleted product.

    value() evaluates lazily on any strictly increasing chain of four grid
    vertex pairs; verify_cocycle() checks the coboundary vanishes on every
    4-simplex.  Evaluators may expose support_hint(cell) to rule out whole
    cells cheaply.
    """

    dp: DeletedProduct
    evaluator: object
    provenance: str
    meta: dict = field(default_factory=dict)
    _cache: dict = field(default_factory=dict, repr=False)

    def value(self, simplex):
        hit = self._cache.get(simplex)
        if hit is None:
            hit = self._cache[simplex] = self.evaluator(simplex)
        return hit

    def _live_cells(self, min_dim):
        hint = getattr(self.evaluator, "support_hint", None)
        for d in self.dp.degrees():
            if d < min_dim:
                continue
            for cell in self.dp.cells_of_dim(d):
                if hint is not None and not hint(cell):
                    continue
                yield cell

    def verify_cocycle(self):
        for cell in self._live_cells(4):
            for path in ez_chain(cell):
                acc = 0
                for i in range(5):
                    v = self.value(path[:i] + path[i + 1:])
                    if v:
                        acc += (-1) ** i * v
                if acc:
                    raise CertificateError(
                        "coboundary of the pair cochain does not vanish on a "
                        f"face of cell {cell}")
        return True

    def is_identically_zero(self):
        for cell in self._live_cells(3):
            for s in chain_simplices(cell, 4):
                if self.value(s):
                    return False
        return True

    def materialize3(self):
        """All nonzero values on 3-simplices, keyed by vertex chain."""
        out = {}
        for cell in self._live_cells(3):
            for s in chain_simplices(cell, 4):
                if s not in out:
                    v = self.value(s)
                    if v:
                        out[s] = v
        return out


def gauss_cocycle(complex_, plmap, direction, size_guard=None, validate=True,
                  verify=True):
    """Co-directed pair-counting cochain of an almost-embedding.

    U on a 3-simplex is the signed number of point pairs (x, y) in the
    carrier cell pair with f(y) - f(x) a positive multiple of the direction,
    from exact rational solves.  Raises on non-generic directions and, when
    validate is set, on vertex-disjoint simplices with meeting images.
    """
    if validate:
        bad = validate_almost_embedding(complex_, plmap)
        if bad:
            raise DegenerateGeometryError(
                f"{len(bad)} vertex-disjoint simplex pairs have meeting "
                f"images, first {bad[0]}")
    kw = {"size_guard": size_guard} if size_guard is not None else {}
    dp = DeletedProduct(complex_, 2, **kw)
    counter = DirectionCounter(plmap, direction)
    gc = GaussCocycle(dp=dp, evaluator=counter, provenance=FROM_GEOMETRY,
                      meta={"direction": tuple(vec(direction))})
    if verify:
        gc.verify_cocycle()
    return gc


# ---------------------------------------------------------------------------
# prescribed linking data as a pair cochain
# ---------------------------------------------------------------------------

def loop_duals(complex_, loop_tags):
    """Integer 1-cochains with zero coboundary on every triangle, pairing to
    one with their own tagged loop and to zero with the others; solved
    exactly.  Raises when no such cocycles exist, e.g. when a loop bounds."""
    loops = [tagged_cycle(complex_, t, 1) for t in loop_tags]
    edges = list(complex_.simplices.get(1, []))
    eidx = {e: i for i, e in enumerate(edges)}
    tri_rows = []
    for tri in complex_.simplices.get(2, []):
        a, b, c = tri
        tri_rows.append({eidx[(b, c)]: 1, eidx[(a, c)]: -1, eidx[(a, b)]: 1})
    duals = []
    for k in range(len(loops)):
        entries = {}
        for i, row in enumerate(tri_rows):
            for j, s in row.items():
                entries[(i, j)] = s
        nr = len(tri_rows)
        rhs = {}
        for li, lp in enumerate(loops):
            for e, c in lp.items():
                entries[(nr, eidx[e])] = c
            if li == k:
                rhs[nr] = 1
            nr += 1
        x = solve_integer(entries, nr, len(edges), rhs)
        if x is None:
            raise InvalidComplexError(
                f"no cocycle is dual to loop {loop_tags[k]!r}; "
                "the loop bounds in this complex")
        duals.append({edges[j]: v for j, v in x.items() if v})
    return duals


def sphere_dual(complex_, tag):
    """2-cochain pairing to one with the tagged 2-cycle: the indicator of
    its least triangle, whose cycle coefficient is normalized to one."""
    z = tagged_cycle(complex_, tag, 2)
    least = min(z)
    if z[least] != 1:
        raise InvalidComplexError(f"tagged cycle {tag!r} is not normalized")
    return {least: 1}


def _chunk(simplex, lo, hi, side):
    img = [g[side] for g in simplex[lo:hi]]
    for a, b in zip(img, img[1:]):
        if a == b:
            return None
    return tuple(img)


class _SyntheticEvaluator:
    """U as a sum of cup products of pulled-back duals: for each loop g,
    lam(B, g) front(vB) back(tg) plus lam(A, g) front(tg) back(vA), with vA
    and vB triangle indicators and tg exact loop duals.  Both cup factors
    pull back cocycles, so the coboundary vanishes identically."""

    def __init__(self, va, vb, duals, lam_a, lam_b):
        self.va = va
        self.vb = vb
        self.duals = duals
        self.lam_a = lam_a
        self.lam_b = lam_b
        self.tri_a = next(iter(va))
        self.tri_b = next(iter(vb))

    def support_hint(self, cell):
        # a nonzero value needs all three indicator vertices inside one
        # factor simplex, which pins that factor to the indicator triangle
        return cell[0] == self.tri_b or cell[1] == self.tri_a

    def __call__(self, simplex):
        total = 0
        f3 = _chunk(simplex, 0, 3, 0)
        if f3 is not None and f3 in self.vb:
            b1 = _chunk(simplex, 2, 4, 1)
            if b1 is not None:
                for lam, t in zip(self.lam_b, self.duals):
                    if lam:
                        total += lam * self.vb[f3] * t.get(b1, 0)
        b3 = _chunk(simplex, 1, 4, 1)
        if b3 is not None and b3 in self.va:
            f1 = _chunk(simplex, 0, 2, 0)
            if f1 is not None:
                for lam, t in zip(self.lam_a, self.duals):
                    if lam:
                        total += lam * t.get(f1, 0) * self.va[b3]
        return total


def synthetic_cocycle(complex_, linking, sphere_tags=("S", "Sp"),
                      loop_tags=("loop_a", "loop_b"), size_guard=None,
                      verify=True):
    """Pair cochain realizing a prescribed linking form exactly.

    linking maps (sphere tag, loop tag) to an integer; the resulting cochain
    pairs with sphere x loop and loop x sphere product cycles to exactly
    those integers.  Requires the loops not to bound (see loop_duals).
    """
    ta, tb = sphere_tags
    va = sphere_dual(complex_, ta)
    vb = sphere_dual(complex_, tb)
    duals = loop_duals(complex_, loop_tags)
    lam_a = [int(linking.get((ta, g), 0)) for g in loop_tags]
    lam_b = [int(linking.get((tb, g), 0)) for g in loop_tags]
    kw = {"size_guard": size_guard} if size_guard is not None else {}
    dp = DeletedProduct(complex_, 2, **kw)
    ev = _SyntheticEvaluator(va, vb, duals, lam_a, lam_b)
    gc = GaussCocycle(dp=dp, evaluator=ev, provenance=USER_SUPPLIED,
                      meta={"linking": dict(linking),
                            "sphere_tags": tuple(sphere_tags),
                            "loop_tags": tuple(loop_tags)})
    gc.duals = duals
    if verify:
        gc.verify_cocycle()
    return gc


def linking_form_from_json(obj):
    """Parse {"lambda": [[sphere_tag, loop_tag, value], ...]}."""
    try:
        lam = {}
        for s, g, v in obj["lambda"]:
            lam[(str(s), str(g))] = int(v)
    except (KeyError, TypeError, ValueError) as e:
        raise InvalidComplexError(f"linking form JSON malformed: {e}") from e
    return lam


def cup_pairing_1_1(t1, t2, cycle2):
    """<t1 cup t2, z> for 1-cochains against a 2-cycle, with front/back
    faces: sum of z(a,b,c) t1(a,b) t2(b,c)."""
    total = 0
    for (a, b, c), coeff in sorted(cycle2.items()):
        if coeff:
            total += coeff * t1.get((a, b), 0) * t2.get((b, c), 0)
    return total


# ---------------------------------------------------------------------------
# the degree-6 combination of pairwise pullbacks
# ---------------------------------------------------------------------------

def _proj_value(u_fn, pair, simplex):
    img = project_chain(pair, simplex)
    if img is None:
        return 0
    return u_fn(img)


def arnold_value(u_fn, simplex):
    """P12 U cup P23 U - P12 U cup P31 U + P23 U cup P31 U on a 6-simplex,
    with front-face/back-face cups."""
    front = simplex[:4]
    back = simplex[3:]
    p12f = _proj_value(u_fn, (0, 1), front)
    p23f = _proj_value(u_fn, (1, 2), front)
    if not (p12f or p23f):
        return 0
    p23b = _proj_value(u_fn, (1, 2), back)
    p31b = _proj_value(u_fn, (2, 0), back)
    return p12f * p23b - p12f * p31b + p23f * p31b


@dataclass
class ArnoldPullback:
    """Degree-6 cochain on the triangulated three-fold deleted product,
    evaluated lazily from a pair cochain."""

    gauss: GaussCocycle

    def value(self, simplex):
        return arnold_value(self.gauss.value, simplex)

    def materialize(self, tri3):
        out = {}
        for s in tri3.cells_of_dim(6):
            v = self.value(s)
            if v:
                out[s] = v
        return out

    def verify_cocycle(self, tri3):
        """Coboundary check on every 7-simplex; vacuously true over a
        2-dimensional base, where factor dimensions cap cells at degree
        six."""
        for s in tri3.cells_of_dim(7):
            acc = 0
            for i in range(8):
                acc += (-1) ** i * self.value(s[:i] + s[i + 1:])
            if acc:
                raise CertificateError(
                    "combination of pullbacks is not a cocycle")
        return True


def arnold_pullback(gc, verify=True):
    """The degree-6 cochain built from a verified pair cocycle."""
    if verify:
        gc.verify_cocycle()
    return ArnoldPullback(gc)


def arnold_formal():
    """The formal combination u x u x 1 - u x 1 x u + 1 x u x u as a dict
    basis-word -> coefficient, with u of odd degree."""
    return {("u", "u", "1"): 1, ("u", "1", "u"): -1, ("1", "u", "u"): 1}


def act_formal(perm, expr, odd_symbol="u"):
    """Permute tensor slots, with the sign for moving odd-degree factors
    past each other."""
    out = {}
    for word, coeff in expr.items():
        moved = tuple(word[perm[i]] for i in range(len(word)))
        odd_positions = [i for i, w in enumerate(word) if w == odd_symbol]
        images = [perm.index(i) for i in odd_positions]
        sign = 1
        for a, b in itertools.combinations(range(len(images)), 2):
            if images[a] > images[b]:
                sign = -sign
        add_into(out, moved, sign * coeff)
    return {w: c for w, c in out.items() if c}


# ---------------------------------------------------------------------------
# product cycles and pairings
# ---------------------------------------------------------------------------

def product_cycle(factors):
    """Cellular cross-product chain of sparse simplicial chains.

    Every combination of support simplices must be pairwise vertex-disjoint,
    otherwise the product leaves the deleted product and an error is raised.
    The boundary is checked to vanish.
    """
    out = {}
    for combo in itertools.product(*[sorted(f.items()) for f in factors]):
        cells = tuple(s for s, _ in combo)
        for a, b in itertools.combinations(cells, 2):
            if set(a) & set(b):
                raise InvalidComplexError(
                    "cycle tags are not pairwise vertex-disjoint: "
                    f"{a} meets {b}")
        coeff = 1
        for _, c in combo:
            coeff *= c
        if coeff:
            add_into(out, cells, coeff)
    bd = {}
    for cell, c in out.items():
        for f, e in cell_boundary(cell).items():
            add_into(bd, f, c * e)
    if any(bd.values()):
        raise InvalidComplexError("product of the given chains is not a cycle")
    return out


def ez_pairing(fn, chain):
    """Pair a triangulation cochain (a function of a simplex) against the
    shuffle chain of a cellular chain; deterministic summation order."""
    total = 0
    for cell in sorted(chain):
        zc = chain[cell]
        if not zc:
            continue
        paths = ez_chain(cell)
        for path in sorted(paths):
            v = fn(path)
            if v:
                total += zc * paths[path] * v
    return total


def pair_linking_values(gc, sphere_chain, loop_chain, sphere_first=True):
    """<U, EZ(sphere x loop)> or <U, EZ(loop x sphere)>."""
    factors = [sphere_chain, loop_chain] if sphere_first \
        else [loop_chain, sphere_chain]
    z = product_cycle(factors)
    return ez_pairing(gc.value, z)


def kunneth_pairing(x1, x2, y1, y2):
    """Two-by-two determinant shortcut: x1*y2 - x2*y1."""
    return x1 * y2 - x2 * y1


# ---------------------------------------------------------------------------
# certification
# ---------------------------------------------------------------------------

class _CellularContext:
    """Just enough structure for certificate re-verification of cellular
    pairings: a boundary operator and an identity unfold."""

    class _DP:
        @staticmethod
        def boundary(cell):
            return cell_boundary(cell)

    def __init__(self):
        self.dp = self._DP()
        self.character = "trivial"
        self.char_degree = 0

    def unfold(self, degree, values):
        return dict(values)

    def coboundary_values(self, degree, values):
        # only the empty primitive of the zero cochain is verified here
        if values:
            raise CertificateError("cellular context cannot solve cochains")
        return {}


def cellular_context():
    """Verification context for certificates whose cochain lives on plain
    product cells: boundary arithmetic only, no orbit structure."""
    return _CellularContext()


def _pairing_certificate(ap, z):
    """Integrate the degree-6 combination over the shuffle chains of the
    support cells; a nonzero total yields a re-verifiable certificate whose
    stored cochain is cellular, so checking it is plain arithmetic."""
    w = {}
    total = 0
    for cell in sorted(z):
        paths = ez_chain(cell)
        acc = 0
        for path in sorted(paths):
            v = ap.value(path)
            if v:
                acc += paths[path] * v
        if acc:
            w[cell] = acc
            total += z[cell] * acc
    if total == 0:
        return None, 0
    cert = Certificate(NONZERO_BY_PAIRING, 6, "trivial", 0, w,
                       {"cycle": dict(z), "value": total})
    if not cert.verify(_CellularContext()):
        raise CertificateError("pairing certificate failed self-check")
    return cert, total


def _zero_certificate(payload):
    cert = Certificate(ZERO_WITH_PRIMITIVE, 6, "trivial", 0, {},
                       dict(payload, primitive={}))
    if not cert.verify(_CellularContext()):
        raise CertificateError("zero certificate failed self-check")
    return cert


def _formal_data_certificate(value, payload):
    """Certificate for linking data consumed as established input: the value
    is recorded against a formal point cycle, so re-verification is the
    determinant arithmetic itself."""
    z = {((0,), (0,), (0,)): 1}
    w = {((0,), (0,), (0,)): value}
    cert = Certificate(NONZERO_BY_PAIRING, 6, "trivial", 0, w,
                       dict(payload, cycle=z, value=value))
    if not cert.verify(_CellularContext()):
        raise CertificateError("data certificate failed self-check")
    return cert


def o3_certificate(complex_, route, linking=None, gauss=None,
                   tags=("S", "Sp", "loop_a", "loop_b", "T"),
                   size_guard=None, solve_guard=200000):
    """Certify the third-order class against the tagged product cycle.

    route "kunneth" takes a linking form.  When the tagged loops admit dual
    cocycles, the form is realized as an honest pair cochain, both sides are
    computed, and the determinant must reproduce the cochain pairing (scaled
    by the cup pairing of the duals on the torus factor).  When the loops
    bound, the linking data is consumed as established input and the
    determinant itself is certified.  route "cochain" takes a pair cochain;
    a nonzero pairing certifies the class, an identically zero cochain
    certifies vanishing, and otherwise a full coboundary solve is attempted
    below the solve guard.
    """
    ta, tb, ga, gb, tt = tags
    za = tagged_cycle(complex_, ta, 2)
    zb = tagged_cycle(complex_, tb, 2)
    zt = tagged_cycle(complex_, tt, 2)
    loops = [tagged_cycle(complex_, g, 1) for g in (ga, gb)]
    z = product_cycle([za, zb, zt])

    if route == "kunneth":
        if linking is None:
            raise InvalidComplexError("kunneth route needs a linking form")
        try:
            gc = synthetic_cocycle(complex_, linking, sphere_tags=(ta, tb),
                                   loop_tags=(ga, gb), size_guard=size_guard)
        except InvalidComplexError:
            gc = None
        order = [(ga, gb)[i] for i in GAMMA_ORDER]
        if gc is None:
            # loops bound; the linking data stands in for the pairings
            xs = [int(linking.get((tb, g), 0)) for g in order]
            ys = [int(linking.get((ta, g), 0)) for g in order]
            value = kunneth_pairing(xs[0], xs[1], ys[0], ys[1])
            if value == 0:
                raise CertificateError(
                    "determinant of the supplied linking data vanishes; "
                    "nothing to certify on this route")
            return _formal_data_certificate(
                value, {"route": "kunneth", "mode": "linking_data",
                        "x": xs, "y": ys, "tags": list(tags)})
        g1, g2 = (loops[i] for i in GAMMA_ORDER)
        d1, d2 = (gc.duals[i] for i in GAMMA_ORDER)
        xs = [pair_linking_values(gc, zb, g, sphere_first=True)
              for g in (g1, g2)]
        ys = [pair_linking_values(gc, za, g, sphere_first=False)
              for g in (g1, g2)]
        shortcut = kunneth_pairing(xs[0], xs[1], ys[0], ys[1])
        torus_factor = cup_pairing_1_1(d1, d2, zt)
        ap = ArnoldPullback(gc)
        cert, total = _pairing_certificate(ap, z)
        if total != torus_factor * shortcut:
            raise CertificateError(
                "determinant shortcut disagrees with the cochain pairing: "
                f"pairing {total}, determinant {shortcut}, "
                f"torus factor {torus_factor}")
        payload = {"route": "kunneth", "mode": "cochain",
                   "x": xs, "y": ys, "shortcut": shortcut,
                   "torus_factor": torus_factor}
        if cert is not None:
            cert.payload.update(payload)
            return cert
        if gc.is_identically_zero():
            return _zero_certificate(payload)
        raise CertificateError(
            "pairing vanished on the product cycle; class undecided by "
            "this route")

    if route == "cochain":
        if gauss is None:
            raise InvalidComplexError("cochain route needs a pair cochain")
        ap = ArnoldPullback(gauss)
        cert, total = _pairing_certificate(ap, z)
        if cert is not None:
            cert.payload["route"] = "cochain"
            return cert
        if gauss.is_identically_zero():
            return _zero_certificate({"route": "cochain"})
        zero = cocycle_class_certificate(gauss, size_guard=solve_guard)
        zero.payload["route"] = "cochain"
        return zero

    raise InvalidComplexError(f"unknown route {route!r}")


def cocycle_class_certificate(gc, dp3=None, size_guard=200000):
    """Full coboundary-solve certificate for the degree-6 combination on the
    triangulated three-fold deleted product; small complexes only."""
    if dp3 is None:
        dp3 = DeletedProduct(gc.dp.complex, 3, size_guard=size_guard)
    tri3 = Triangulation(dp3)
    values = ArnoldPullback(gc).materialize(tri3)
    eq = plain_complex(tri3)
    return class_status(eq, 6, values)


def equivariant_class_group(complex_, degree=6, size_guard=200000):
    """(free rank, torsion) of the degree-6 cohomology of the triangulated
    three-fold deleted product, equivariant for the coordinate-permuting
    action with the sign character.  Small complexes only; on larger ones a
    nonzero plain pairing already forces the equivariant class to be
    nonzero, since forgetting the action preserves the pairing value."""
    dp3 = DeletedProduct(complex_, 3, size_guard=size_guard)
    tri3 = SymmetricTriangulation(dp3)
    eq = EquivariantComplex(tri3, "sign")
    return equivariant_cohomology(eq, degree)


def cocycle_difference_primitive(g1, g2):
    """Exact 2-cochain with coboundary equal to the difference of two pair
    cochains on the same deleted product; certifies them cohomologous."""
    tri = Triangulation(g1.dp)
    values = {}
    for s in tri.cells_of_dim(3):
        v = g1.value(s) - g2.value(s)
        if v:
            values[s] = v
    eq = plain_complex(tri)
    cert = class_status(eq, 3, values)
    if cert.kind != ZERO_WITH_PRIMITIVE:
        raise CertificateError("pair cochains are not cohomologous")
    return cert.payload["primitive"]


# ---------------------------------------------------------------------------
# triple-product cochains on four-fold deleted products
# ---------------------------------------------------------------------------

def massey_y4(dp4, u_cell=None, vs=None, xs=None):
    """Three degree-8 cochains from triple products of pairwise pullbacks.

    Input is a cellular 3-cochain on two-fold cells (pulled back along all
    ordered coordinate pairs of the four-fold product) or a prebuilt dict of
    those pullbacks.  Each cyclic triple combination must be a coboundary; a
    primitive is solved exactly unless supplied, in which case its
    coboundary is verified.  Returns the three cochains, each checked to be
    a cocycle, with their sum checked to vanish entrywise.
    """
    if dp4.n != 4:
        raise InvalidComplexError(
            "triple-product cochains need a four-fold product")
    cells = {d: dp4.cells_of_dim(d) for d in dp4.degrees()}
    if vs is None:
        if u_cell is None:
            raise InvalidComplexError("need a pair cochain or its pullbacks")
        vs = {}
        for i, j in itertools.permutations((1, 2, 3, 4), 2):
            vs[(i, j)] = materialize(pullback_pair(u_cell, 4, i, j),
                                     cells.get(3, []))

    triples = [(1, 2, 3), (2, 3, 4), (3, 4, 1), (4, 1, 2)]
    vt = {}
    for (i, j, k) in triples:
        out = {}
        for a, b in (((i, j), (j, k)), ((j, k), (k, i)), ((k, i), (i, j))):
            for cell, v in tensor_cup(vs[a], vs[b]).items():
                add_into(out, cell, v)
        vt[(i, j, k)] = {c: v for c, v in out.items() if v}

    if xs is None:
        xs = {}
        c5 = cells.get(5, [])
        c6 = cells.get(6, [])
        ridx = {c: i for i, c in enumerate(c6)}
        cidx = {c: i for i, c in enumerate(c5)}
        entries = {}
        for cell in c6:
            i = ridx[cell]
            for f, e in cell_boundary(cell).items():
                j = cidx.get(f)
                if j is not None and e:
                    entries[(i, j)] = entries.get((i, j), 0) + e
        for t in triples:
            if not vt[t]:
                xs[t] = {}
                continue
            b = {ridx[c]: v for c, v in vt[t].items()}
            x = solve_integer(entries, len(c6), len(c5), b)
            if x is None:
                raise CertificateError(
                    f"triple combination for {t} is not a coboundary")
            xs[t] = {c5[j]: v for j, v in x.items() if v}
    else:
        for t in triples:
            got = coboundary_cochain(xs[t], cells.get(6, []))
            if diff(got, vt[t]) != {}:
                raise CertificateError(
                    f"supplied primitive for {t} has the wrong coboundary")

    def term(t, a, b):
        return tensor_cup(xs[t], diff(vs[a], vs[b]))

    def assemble(parts):
        out = {}
        for p in parts:
            for cell, v in p.items():
                add_into(out, cell, v)
        return {c: v for c, v in out.items() if v}

    y1 = assemble([term((1, 2, 3), (1, 4), (2, 4)),
                   term((2, 3, 4), (3, 1), (4, 1)),
                   term((3, 4, 1), (3, 2), (4, 2)),
                   term((4, 1, 2), (1, 3), (2, 3))])
    y2 = assemble([term((1, 2, 3), (3, 4), (1, 4)),
                   term((2, 3, 4), (4, 1), (2, 1)),
                   term((3, 4, 1), (1, 2), (3, 2)),
                   term((4, 1, 2), (2, 3), (4, 3))])
    y3 = assemble([term((1, 2, 3), (2, 4), (3, 4)),
                   term((2, 3, 4), (2, 1), (3, 1)),
                   term((3, 4, 1), (4, 2), (1, 2)),
                   term((4, 1, 2), (4, 3), (1, 3))])

    c9 = cells.get(9, [])
    for name, y in (("first", y1), ("second", y2), ("third", y3)):
        if coboundary_cochain(y, c9):
            raise CertificateError(
                f"{name} triple-product cochain is not a cocycle")
    if assemble([y1, y2, y3]):
        raise CertificateError(
            "the three triple-product cochains do not sum to zero")
    return y1, y2, y3
