"""Paired intersection data of mapped 2-cells and its tree-valued cochains.

A datum records, for unordered pairs of vertex-disjoint 2-cells, the
signed double points of their images, a pairing of opposite signs into
disks, and each disk's signed meeting numbers with third 2-cells.  The
induced cochain on the three-fold deleted product sums disk-meets-sheet
numbers cyclically; it changes by an explicit elementary coboundary under
stabilization and not at all under disk splitting, so its equivariant
class is an invariant of the underlying map.

Higher intersection data comes as towers: per cell set, the unpaired
points each carry a sign and an embedded trivalent tree whose leaves name
the base 2-cells.  Summing signed trees gives a value in the tree group
of matching order, and spreading those values over ordered product cells
gives the tree-valued top cochain for any number of factors.

2-cells inside towers are named by their index in the complex's list of
2-simplices, so tree leaves stay plain integers.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .chains import add_into
from .errors import InvalidComplexError
from .products import DeletedProduct, act_on_cell, cell_boundary
from .simplicial import boundary
from .trees import (TreeGroupElement, combine_trees, relabel_element,
                    tree_leaves, zero_element)
from .zlinalg import EquivariantComplex, class_status, perm_sign


# ---------------------------------------------------------------------------
# the datum
# ---------------------------------------------------------------------------

@dataclass
class DiskRecord:
    """Signed meeting numbers of one pairing disk with third 2-cells,
    recorded for the written order of its pair."""

    meets: dict


@dataclass
class PairRecord:
    cells: tuple
    points: list
    disks: list


class WhitneyDatum:
    """Double-point bookkeeping for one map of a 2-complex to 4-space.

    Each record carries an ordered pair of vertex-disjoint 2-cells, the
    signed double points of their images, and the disks pairing them; a
    disk's meets are its signed intersections with third 2-cells, and
    reversing the pair order negates them.  Intersections with cells
    adjacent to the pair are never recorded: such cells share no product
    cell with the pair, so they cannot enter any cochain value.
    """

    def __init__(self, complex_, pairs):
        self.complex_ = complex_
        self.pairs = list(pairs)
        self.validate()

    def validate(self):
        tris = set(self.complex_.simplices_of_dim(2))
        self._index = {}
        for rec in self.pairs:
            if len(rec.cells) != 2:
                raise InvalidComplexError("a pair record needs two cells")
            a, b = rec.cells
            for c in (a, b):
                if c not in tris:
                    raise InvalidComplexError(f"{c} is not a 2-cell of the complex")
            if set(a) & set(b):
                raise InvalidComplexError(
                    f"pair cells {a} and {b} share a vertex")
            key = frozenset((a, b))
            if key in self._index:
                raise InvalidComplexError(f"pair {a}, {b} recorded twice")
            self._index[key] = rec
            balance = [[0, 0] for _ in rec.disks]
            for sign, disk in rec.points:
                if sign not in (1, -1):
                    raise InvalidComplexError("double-point signs must be +1 or -1")
                if not 0 <= disk < len(rec.disks):
                    raise InvalidComplexError(
                        f"point references disk {disk} of {len(rec.disks)}")
                balance[disk][0 if sign > 0 else 1] += 1
            if any(p != 1 or m != 1 for p, m in balance):
                raise InvalidComplexError(
                    "each disk must pair exactly one positive point with one negative")
            for disk in rec.disks:
                for t, v in disk.meets.items():
                    if t not in tris:
                        raise InvalidComplexError(f"{t} is not a 2-cell of the complex")
                    if set(t) & set(a) or set(t) & set(b):
                        raise InvalidComplexError(
                            f"meets may only involve cells disjoint from the pair, not {t}")
                    if not isinstance(v, int):
                        raise InvalidComplexError("meeting numbers must be integers")
        return True

    def copy(self):
        pairs = [PairRecord(cells=rec.cells,
                            points=list(rec.points),
                            disks=[DiskRecord(meets=dict(d.meets)) for d in rec.disks])
                 for rec in self.pairs]
        return WhitneyDatum(self.complex_, pairs)

    def _record(self, a, b):
        return self._index.get(frozenset((a, b)))

    def meet_number(self, a, b, c):
        """Total signed meets of the disks of the ordered pair (a, b) with c."""
        rec = self._record(a, b)
        if rec is None:
            return 0
        total = sum(d.meets.get(c, 0) for d in rec.disks)
        return total if rec.cells == (a, b) else -total

    # -- serialization: cells by index into the 2-simplex list -------------

    def to_json(self):
        tri_ix = self.complex_.index
        out = []
        for rec in self.pairs:
            out.append({
                "cells": [tri_ix(rec.cells[0]), tri_ix(rec.cells[1])],
                "points": [{"sign": s, "disk": d} for s, d in rec.points],
                "disks": [{"meets": {str(tri_ix(t)): v
                                     for t, v in sorted(d.meets.items())}}
                          for d in rec.disks],
            })
        return {"pairs": out}

    @classmethod
    def from_json(cls, complex_, obj):
        tris = complex_.simplices_of_dim(2)

        def tri(i):
            i = int(i)
            if not 0 <= i < len(tris):
                raise InvalidComplexError(f"no 2-cell with index {i}")
            return tris[i]

        pairs = []
        for rec in obj.get("pairs", []):
            cells = tuple(tri(i) for i in rec["cells"])
            points = [(int(p["sign"]), int(p["disk"])) for p in rec.get("points", [])]
            disks = [DiskRecord(meets={tri(k): int(v)
                                       for k, v in d.get("meets", {}).items()})
                     for d in rec.get("disks", [])]
            pairs.append(PairRecord(cells=cells, points=points, disks=disks))
        return cls(complex_, pairs)


def merge_data(wd1, wd2):
    """Union of two data over the same complex; shared pairs pool their
    points and disks, reoriented to the first datum's pair order."""
    if wd1.complex_ is not wd2.complex_:
        raise InvalidComplexError("data live over different complexes")
    out = wd1.copy()
    for rec in wd2.pairs:
        mine = out._record(*rec.cells)
        if mine is None:
            out.pairs.append(PairRecord(
                cells=rec.cells, points=list(rec.points),
                disks=[DiskRecord(meets=dict(d.meets)) for d in rec.disks]))
            continue
        flip = 1 if mine.cells == rec.cells else -1
        base = len(mine.disks)
        for d in rec.disks:
            mine.disks.append(DiskRecord(
                meets={t: flip * v for t, v in d.meets.items()}))
        mine.points.extend((s, base + d) for s, d in rec.points)
    out.validate()
    return out


# ---------------------------------------------------------------------------
# the three-factor cochain
# ---------------------------------------------------------------------------

@dataclass
class W3Cochain:
    """Top cochain on the three-fold deleted product whose value on an
    ordered triple is the cyclic sum of disk-meets-sheet numbers.  Values
    are stored on orbit representatives after a cellwise check that the
    cochain transforms by the sign of the slot permutation."""

    dp: DeletedProduct
    eq: EquivariantComplex
    values: dict
    datum: WhitneyDatum

    def cellular(self):
        return self.eq.unfold(6, self.values)

    def value(self, cell):
        rep, factor = self.eq.to_rep[cell]
        return factor * self.values.get(rep, 0)

    def support_orbits(self):
        return dict(self.values)


def w3_cocycle(wd, dp=None, eq=None, size_guard=None):
    """Cochain of a datum: on sigma_1 x sigma_2 x sigma_3 the value is

        W(s1, s2).s3 + W(s2, s3).s1 + W(s3, s1).s2

    with W(a, b).c the ordered meeting number of the pair's disks with c.
    Automatically a cocycle: all cells of total degree six are triples of
    2-cells, so the degree-seven groups upstairs are empty.
    """
    wd.validate()
    if dp is None:
        kw = {"size_guard": size_guard} if size_guard is not None else {}
        dp = DeletedProduct(wd.complex_, 3, degrees=(5, 6), **kw)
    if eq is None:
        eq = EquivariantComplex(dp, "sign")
    cochain = {}
    for cell in dp.cells_of_dim(6):
        a, b, c = cell
        v = (wd.meet_number(a, b, c) + wd.meet_number(b, c, a)
             + wd.meet_number(c, a, b))
        if v:
            cochain[cell] = v
    values = eq.fold(6, cochain, check=True)
    return W3Cochain(dp=dp, eq=eq, values=values, datum=wd)


def w3_class(w3c, cycles=()):
    """Certificate for the equivariant class of a datum cochain."""
    return class_status(w3c.eq, 6, w3c.values, cycles=cycles)


# ---------------------------------------------------------------------------
# datum moves
# ---------------------------------------------------------------------------

def stabilize(wd, s1, s2, nu, sign=1):
    """Add two canceling double points of s1 and s2, paired by a disk that
    meets third cells the way a small sphere around the edge nu does.

    The new disk's meets copy the incidence pattern of nu: for every
    2-cell t disjoint from the pair whose boundary carries nu, the meet is
    sign times the coefficient of nu in the boundary of t.  The orientation
    of the small sphere is not pinned down by the datum, so the overall
    sign is an input.  The cochain of the result differs from the cochain
    of wd by exactly sign times elementary_coboundary(dp, s1, s2, nu).
    """
    s1, s2, nu = tuple(s1), tuple(s2), tuple(nu)
    if sign not in (1, -1):
        raise InvalidComplexError("the stabilization sign must be +1 or -1")
    tris = set(wd.complex_.simplices_of_dim(2))
    if s1 not in tris or s2 not in tris:
        raise InvalidComplexError("stabilization needs two 2-cells of the complex")
    if nu not in set(wd.complex_.simplices_of_dim(1)):
        raise InvalidComplexError("stabilization needs a 1-cell of the complex")
    if set(s1) & set(s2) or set(s1) & set(nu) or set(s2) & set(nu):
        raise InvalidComplexError(
            "stabilization cells must be pairwise vertex-disjoint")
    contribution = {}
    for t in wd.complex_.simplices_of_dim(2):
        if set(nu) <= set(t) and not set(t) & set(s1) and not set(t) & set(s2):
            contribution[t] = sign * boundary(t)[nu]
    new = wd.copy()
    rec = new._record(s1, s2)
    if rec is None:
        rec = PairRecord(cells=(s1, s2), points=[], disks=[])
        new.pairs.append(rec)
    meets = dict(contribution) if rec.cells == (s1, s2) else \
        {t: -v for t, v in contribution.items()}
    d = len(rec.disks)
    rec.disks.append(DiskRecord(meets=meets))
    rec.points.extend([(1, d), (-1, d)])
    new.validate()
    return new


def elementary_coboundary(dp, s1, s2, nu):
    """Coboundary of the five-cochain dual to the orbit of s1 x s2 x nu.

    The five-cochain takes the value sign(g) times the Koszul sign on the
    g-image of the base cell and zero elsewhere; its coboundary is returned
    as a plain dict on the six-cells of dp.
    """
    base = (s1, s2, nu)
    five = {}
    for g in dp.group():
        img, sgn = act_on_cell(g, base)
        add_into(five, img, perm_sign(g) * sgn)
    out = {}
    for cell in dp.cells_of_dim(6):
        acc = 0
        for f, e in cell_boundary(cell).items():
            v = five.get(f)
            if v:
                acc += e * v
        if acc:
            out[cell] = acc
    return out


def split_disk(wd, pair_cells, disk_index, first_part):
    """Split one disk in two along its recorded intersections.

    first_part lists (cell, sign) unit meets kept by the first half; the
    second half keeps the rest.  Both halves must be nonempty.  The
    negative point of the old disk moves to the second half and one new
    canceling point pair bridges the halves, so the datum stays valid and
    every meeting total, hence the cochain, is unchanged.
    """
    a, b = (tuple(c) for c in pair_cells)
    new = wd.copy()
    rec = new._record(a, b)
    if rec is None:
        raise InvalidComplexError(f"no recorded pair {a}, {b}")
    if not 0 <= disk_index < len(rec.disks):
        raise InvalidComplexError(f"the pair has no disk {disk_index}")
    items = []
    for t, v in sorted(rec.disks[disk_index].meets.items()):
        items.extend([(t, 1 if v > 0 else -1)] * abs(v))
    part = [(tuple(t), int(s)) for t, s in first_part]
    remainder = list(items)
    for it in part:
        if it not in remainder:
            raise InvalidComplexError(
                f"{it} is not an available unit intersection of the disk")
        remainder.remove(it)
    if not part or not remainder:
        raise InvalidComplexError("a split needs both halves nonempty")
    m1, m2 = {}, {}
    for t, s in part:
        add_into(m1, t, s)
    for t, s in remainder:
        add_into(m2, t, s)
    d2 = len(rec.disks)
    rec.disks[disk_index] = DiskRecord(meets=m1)
    rec.disks.append(DiskRecord(meets=m2))
    moved = False
    for i, (s, d) in enumerate(rec.points):
        if d == disk_index and s == -1 and not moved:
            rec.points[i] = (-1, d2)
            moved = True
    rec.points.extend([(-1, disk_index), (1, d2)])
    new.validate()
    return new


# ---------------------------------------------------------------------------
# towers and higher cochains
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TowerDatum:
    """Order-n intersection record over n + 2 base 2-cells.

    points are (sign, tree) with the tree's leaves naming each base cell
    exactly once; nesting depth enforces the trivalent shape, so a tree
    with n + 2 leaves has n internal vertices as the order demands.  disks
    carries the pairing layers below the top as opaque data.
    """

    order: int
    surfaces: tuple
    points: tuple
    disks: tuple = ()

    def validate(self):
        if self.order < 1:
            raise InvalidComplexError("towers have order at least one")
        surf = tuple(sorted(self.surfaces))
        if len(set(surf)) != len(surf) or len(surf) != self.order + 2:
            raise InvalidComplexError(
                f"an order-{self.order} tower needs {self.order + 2} distinct base cells")
        for sign, tree in self.points:
            if sign not in (1, -1):
                raise InvalidComplexError("point signs must be +1 or -1")
            if tree_leaves(tree) != surf:
                raise InvalidComplexError(
                    "a point tree must use each base cell exactly once")
        return True


def tau(td):
    """Reduced sum of the signed point trees of a tower."""
    td.validate()
    if not td.points:
        return zero_element(td.surfaces)
    return combine_trees(list(td.points))


def towers_from_whitney(wd, dp=None):
    """Order-one towers per disjoint triple of 2-cells of a datum.

    Each unit meet of a disk of the ordered pair (a, b) with a third cell c
    becomes a point with tree ((a, b), c); the three-factor cochain of the
    result matches the cochain of the datum under the rank-one tree group.
    """
    comp = wd.complex_
    if dp is None:
        dp = DeletedProduct(comp, 3, degrees=(6,))
    towers = {}
    for cell in dp.cells_of_dim(6):
        key = frozenset(comp.index(s) for s in cell)
        if key in towers:
            continue
        cells = sorted(cell)
        pts = []
        for a, b in itertools.combinations(cells, 2):
            c = next(x for x in cells if x not in (a, b))
            rec = wd._record(a, b)
            if rec is None:
                continue
            ia, ib, ic = (comp.index(x) for x in (*rec.cells, c))
            for disk in rec.disks:
                v = disk.meets.get(c, 0)
                if v:
                    pts.extend([(1 if v > 0 else -1, ((ia, ib), ic))] * abs(v))
        towers[key] = TowerDatum(order=1, surfaces=tuple(sorted(key)),
                                 points=tuple(pts))
    return towers


@dataclass
class WnCochain:
    """Tree-group-valued top cochain of the n-fold deleted product.

    The value on an ordered cell is the tower invariant of its cell set
    with leaves renamed to slot positions 1..n; renaming along a slot
    permutation times the Koszul sign reproduces the value on the permuted
    cell, and that consistency is checked cellwise on construction.
    """

    dp: DeletedProduct
    n: int
    values: dict

    def value(self, cell):
        got = self.values.get(cell)
        if got is None:
            return zero_element(range(1, self.n + 1))
        return got

    def census(self):
        nonzero = sum(1 for v in self.values.values() if not v.is_zero())
        return {"cells": len(self.values), "nonzero": nonzero}


def wn_cochain(complex_, towers, n, size_guard=None, verify=True):
    """Spread tower invariants over the ordered top cells of the n-fold
    deleted product.  towers maps frozensets of 2-cell indices to
    TowerDatum records of order n - 2; a missing cell set is an error, an
    all-paired tower (no points) contributes zero.
    """
    if n < 3:
        raise InvalidComplexError("tree-valued cochains need at least three factors")
    kw = {"size_guard": size_guard} if size_guard is not None else {}
    dp = DeletedProduct(complex_, n, degrees=(2 * n,), **kw)
    values = {}
    for cell in dp.cells_of_dim(2 * n):
        key = frozenset(complex_.index(s) for s in cell)
        td = towers.get(key)
        if td is None:
            raise InvalidComplexError(
                f"no tower supplied for the cell set {tuple(sorted(key))}")
        if td.order != n - 2:
            raise InvalidComplexError(
                f"a tower of order {td.order} does not fit {n} factors")
        mapping = {complex_.index(s): i + 1 for i, s in enumerate(cell)}
        values[cell] = relabel_element(tau(td), mapping)
    wn = WnCochain(dp=dp, n=n, values=values)
    if verify:
        _check_wn_equivariance(wn)
    return wn


def _check_wn_equivariance(wn):
    """Every slot permutation must carry values to values: renaming leaves
    of the value at a cell, scaled by the cell's Koszul sign, has to equal
    the value at the permuted cell."""
    for cell in sorted(wn.values):
        elem = wn.values[cell]
        for g in wn.dp.group():
            img, sgn = act_on_cell(g, cell)
            mapping = {i + 1: g[i] + 1 for i in range(wn.n)}
            moved = relabel_element(elem, mapping).scale(sgn)
            if wn.values.get(img, zero_element(mapping.values())) != moved:
                raise InvalidComplexError(
                    f"leaf renaming and the slot action disagree at {cell} under {g}")


def towers_from_json(complex_, obj, order):
    """Parse {"towers": [{"cells": [...], "points": [{"sign": s, "tree":
    ...}], ...}]} with 2-cells named by index and trees as nested lists."""

    def as_tree(node):
        if isinstance(node, list):
            if len(node) != 2:
                raise InvalidComplexError("tree nodes must be pairs")
            return (as_tree(node[0]), as_tree(node[1]))
        return int(node)

    ntris = len(complex_.simplices_of_dim(2))
    towers = {}
    for rec in obj.get("towers", []):
        cells = tuple(sorted(int(i) for i in rec["cells"]))
        if any(not 0 <= i < ntris for i in cells):
            raise InvalidComplexError(f"cell indices {cells} out of range")
        pts = tuple((int(p["sign"]), as_tree(p["tree"]))
                    for p in rec.get("points", []))
        td = TowerDatum(order=order, surfaces=cells, points=pts)
        td.validate()
        towers[frozenset(cells)] = td
    return towers
