"""Deleted products of simplicial complexes and their chain-level tools.

The n-fold deleted product of a complex K keeps those cells of the n-fold
product whose factors are pairwise vertex-disjoint simplices.  It carries a
free action of the symmetric group permuting factors; chain-level signs
follow the Koszul rule.  This module also provides the staircase (order
complex) triangulation of product cells, Eilenberg-Zilber shuffle chains,
factor projections, and a componentwise front/back cup product for cellular
cochains on product cells.
"""

from __future__ import annotations

import itertools

from .chains import add_into
from .errors import InvalidComplexError, SizeGuardError

DEFAULT_SIZE_GUARD = 5_000_000


def cell_dim(cell):
    """Total dimension of a product cell (tuple of simplices)."""
    return sum(len(s) - 1 for s in cell)


def cell_boundary(cell):
    """Boundary of a product cell by the graded Leibniz rule.

    d(s1 x ... x sn) = sum_i (-1)^(d1+...+d_{i-1}) s1 x ... x d(si) x ... x sn
    Faces with an empty factor are dropped (vertices have no boundary).
    """
    out = {}
    shift = 0
    for i, s in enumerate(cell):
        d = len(s) - 1
        if d > 0:
            outer = -1 if shift % 2 else 1
            for k in range(d + 1):
                face = s[:k] + s[k + 1:]
                sign = outer * (-1 if k % 2 else 1)
                key = cell[:i] + (face,) + cell[i + 1:]
                add_into(out, key, sign)
        shift += d
    return out


def koszul_sign(perm, dims):
    """Sign from permuting graded factors: product of (-1)^(di*dj) over
    pairs that the permutation inverts.  perm is one-line notation; factor i
    moves to slot perm[i]."""
    sign = 1
    n = len(perm)
    for i in range(n):
        for j in range(i + 1, n):
            if perm[i] > perm[j] and dims[i] % 2 and dims[j] % 2:
                sign = -sign
    return sign


def act_on_cell(perm, cell):
    """Image of a product cell under a factor permutation, with Koszul sign."""
    n = len(perm)
    img = [None] * n
    for i in range(n):
        img[perm[i]] = cell[i]
    dims = [len(s) - 1 for s in cell]
    return tuple(img), koszul_sign(perm, dims)


class DeletedProduct:
    """Cellular n-fold deleted product of a simplicial complex.

    cells may be restricted to a set of total degrees; boundaries of cells in
    the lowest kept degree are still formulaically available but are not
    materialised as cells.  The estimated cell count (ignoring disjointness)
    is checked against size_guard before any enumeration happens.
    """

    def __init__(self, complex_, n, degrees=None, size_guard=DEFAULT_SIZE_GUARD):
        if n < 2:
            raise InvalidComplexError("deleted products need n >= 2 factors")
        self.complex = complex_
        self.n = n
        self.size_guard = size_guard
        dims = sorted(complex_.simplices)
        counts = {d: len(complex_.simplices[d]) for d in dims}
        top = max(dims)
        if degrees is None:
            degrees = set(range(0, n * top + 1))
        else:
            degrees = set(int(d) for d in degrees)
        # cheap upper bound: permanent-style count without disjointness
        per_degree = {}
        for comp in itertools.product(dims, repeat=n):
            tot = sum(comp)
            if tot not in degrees:
                continue
            est = 1
            for d in comp:
                est *= counts[d]
            per_degree[tot] = per_degree.get(tot, 0) + est
        estimate = sum(per_degree.values())
        if estimate > size_guard:
            raise SizeGuardError(
                f"deleted product needs about {estimate} cells, guard is {size_guard}",
                requested=estimate, guard=size_guard)

        masks = {}
        for d in dims:
            for s in complex_.simplices[d]:
                m = 0
                for v in s:
                    m |= 1 << v
                masks[s] = m
        self._masks = masks

        self.cells = {}
        for comp in itertools.product(dims, repeat=n):
            tot = sum(comp)
            if tot not in degrees:
                continue
            bucket = self.cells.setdefault(tot, [])
            self._enumerate(comp, 0, 0, [], bucket)
        for d in self.cells:
            self.cells[d].sort()
        self._degrees = sorted(self.cells)
        self._group = [tuple(p) for p in itertools.permutations(range(n))]
        self._sanity()

    def _enumerate(self, comp, slot, used_mask, prefix, bucket):
        if slot == self.n:
            bucket.append(tuple(prefix))
            return
        for s in self.complex.simplices[comp[slot]]:
            m = self._masks[s]
            if m & used_mask:
                continue
            prefix.append(s)
            self._enumerate(comp, slot + 1, used_mask | m, prefix, bucket)
            prefix.pop()

    def _sanity(self):
        # boundary-of-boundary vanishes; spot-check a deterministic sample
        for d in self._degrees:
            if d < 2:
                continue
            for cell in self.cells[d][:64]:
                acc = {}
                for face, c1 in cell_boundary(cell).items():
                    for f2, c2 in cell_boundary(face).items():
                        add_into(acc, f2, c1 * c2)
                if acc:
                    raise AssertionError("product boundary does not square to zero")

    # interface consumed by EquivariantComplex ---------------------------

    def group(self):
        return self._group

    def degrees(self):
        return list(self._degrees)

    def cells_of_dim(self, d):
        return self.cells.get(d, [])

    def boundary(self, cell):
        return cell_boundary(cell)

    def act(self, perm, cell):
        return act_on_cell(perm, cell)

    # reporting ----------------------------------------------------------

    def census(self):
        out = {"n": self.n, "by_degree": {}}
        total = 0
        for d in self._degrees:
            k = len(self.cells[d])
            out["by_degree"][str(d)] = k
            total += k
        out["total"] = total
        return out


# ---------------------------------------------------------------------------
# staircase triangulation and shuffle chains
# ---------------------------------------------------------------------------

def staircase_paths(cell):
    """Maximal simplices of the staircase triangulation of a product cell.

    Yields (path, sign).  A path is the tuple of grid vertices of a monotone
    unit-step lattice path through the product of the factor vertex chains,
    written as tuples of actual complex vertices.  The sign is (-1)^inv where
    inv counts inversions in the word of factor indices stepped through; with
    this sign the formal sum of paths is the shuffle-product fundamental
    chain of the cell.
    """
    dims = [len(s) - 1 for s in cell]
    n = len(cell)
    word_pool = []
    for i, d in enumerate(dims):
        word_pool.extend([i] * d)
    total = sum(dims)
    for word in sorted(set(itertools.permutations(word_pool))):
        inv = 0
        for a in range(total):
            for b in range(a + 1, total):
                if word[a] > word[b]:
                    inv += 1
        pos = [0] * n
        path = [tuple(cell[i][0] for i in range(n))]
        for step in word:
            pos[step] += 1
            path.append(tuple(cell[i][pos[i]] for i in range(n)))
        yield tuple(path), (-1) ** inv


def ez_chain(cell):
    """Shuffle-product fundamental chain of a cell as {path: sign}."""
    return {path: sign for path, sign in staircase_paths(cell)}


def chain_simplices(cell, length):
    """All strictly increasing chains of the given length in the grid poset
    of a product cell, as tuples of grid vertices (tuples of complex
    vertices).  These are the (length-1)-simplices of the staircase
    triangulation lying in the closed cell."""
    dims = [len(s) - 1 for s in cell]
    n = len(cell)
    grid = list(itertools.product(*[range(d + 1) for d in dims]))

    def le(a, b):
        return all(x <= y for x, y in zip(a, b)) and a != b

    out = []

    def grow(chain, start):
        if len(chain) == length:
            out.append(tuple(tuple(cell[i][p[i]] for i in range(n)) for p in chain))
            return
        for k in range(start, len(grid)):
            if not chain or le(chain[-1], grid[k]):
                chain.append(grid[k])
                grow(chain, k + 1)
                chain.pop()

    grow([], 0)
    return out


def project_vertex(pair_indices, grid_vertex):
    return tuple(grid_vertex[i] for i in pair_indices)


def project_chain(pair_indices, simplex):
    """Image of a staircase simplex under the projection keeping the listed
    factors; returns None when the image is degenerate (repeated vertex)."""
    img = [project_vertex(pair_indices, g) for g in simplex]
    for a, b in zip(img, img[1:]):
        if a == b:
            return None
    return tuple(img)


def cup_on_simplex(alpha, beta, p, simplex):
    """Front-face/back-face cup product evaluated on one ordered simplex:
    alpha on the first p+1 vertices times beta on the rest."""
    return alpha(simplex[:p + 1]) * beta(simplex[p:])


# ---------------------------------------------------------------------------
# componentwise cochain algebra on product cells
# ---------------------------------------------------------------------------

def multidegree(cell):
    return tuple(len(s) - 1 for s in cell)


def tensor_cup(a, b):
    """Cup product of cellular cochains on product cells.

    Cochains are dicts cell -> int where every key of one cochain has a fixed
    total degree (mixed multidegrees are allowed).  The value on a cell is
    the sum over componentwise front/back splittings, with the Koszul sign
    (-1)^(sum_{i<j} l_i * k_j) for interleaving the degree-l_i back factors
    past the degree-k_j front factors.
    """
    if not a or not b:
        return {}
    ka = {multidegree(c) for c in a}
    kb = {multidegree(c) for c in b}
    out = {}
    for mk in ka:
        for ml in kb:
            if len(mk) != len(ml):
                raise InvalidComplexError("cup factors live on different products")
            target = tuple(x + y for x, y in zip(mk, ml))
            sign = 1
            for i in range(len(mk)):
                for j in range(i + 1, len(mk)):
                    if ml[i] % 2 and mk[j] % 2:
                        sign = -sign
            _accumulate_cup(a, b, mk, ml, target, sign, out)
    return {c: v for c, v in out.items() if v}


def _accumulate_cup(a, b, mk, ml, target, sign, out):
    fronts = {}
    for cell, v in a.items():
        if multidegree(cell) == mk:
            fronts.setdefault(cell, 0)
            fronts[cell] += v
    backs = {}
    for cell, v in b.items():
        if multidegree(cell) == ml:
            backs.setdefault(cell, 0)
            backs[cell] += v
    for fc, fv in fronts.items():
        for bc, bv in backs.items():
            glued = []
            ok = True
            for i in range(len(mk)):
                f, g = fc[i], bc[i]
                if f[-1] != g[0]:
                    ok = False
                    break
                glued.append(f + g[1:])
            if not ok:
                continue
            cell = tuple(glued)
            if multidegree(cell) != target:
                continue
            for s in cell:
                if any(x >= y for x, y in zip(s, s[1:])):
                    ok = False
                    break
            if ok:
                add_into(out, cell, sign * fv * bv)


def cellular_coboundary(cochain):
    """Coboundary of a cellular cochain on product cells: (delta c)(e) is the
    value of c on the boundary chain of e.  The caller evaluates the result
    on cells of one degree higher; this returns a function of a cell."""
    def value(cell):
        acc = 0
        for face, coeff in cell_boundary(cell).items():
            acc += coeff * cochain.get(face, 0)
        return acc
    return value


def coboundary_cochain(cochain, cells):
    """Eager coboundary: evaluate cellular_coboundary on the given cells."""
    fn = cellular_coboundary(cochain)
    out = {}
    for cell in cells:
        v = fn(cell)
        if v:
            out[cell] = v
    return out


def materialize(fn, cells):
    """Collect a lazy cochain (function of a cell) into a sparse dict."""
    out = {}
    for cell in cells:
        v = fn(cell)
        if v:
            out[cell] = v
    return out


def pullback_pair(cochain, n, i, j):
    """Pullback of a cellular cochain on a 2-fold deleted product along the
    projection of an n-fold product keeping factors (i, j), 1-based.

    The pullback is supported on cells whose other factors are vertices.
    For i > j the factor swap contributes the Koszul sign (-1)^(d_i * d_j);
    values are produced lazily via the returned function of a cell.
    """
    i0, j0 = i - 1, j - 1

    def value(cell):
        for k, s in enumerate(cell):
            if k not in (i0, j0) and len(s) != 1:
                return 0
        a, b = cell[i0], cell[j0]
        if i < j:
            return cochain.get((a, b), 0)
        da, db = len(a) - 1, len(b) - 1
        sgn = -1 if (da % 2 and db % 2) else 1
        return sgn * cochain.get((a, b), 0)

    return value
