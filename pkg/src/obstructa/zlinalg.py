"""Exact integer linear algebra: Smith normal form, integer solves, and
certified class computations for equivariant cochain complexes.

Everything here runs on arbitrary-precision Python ints.  Matrices are sparse:
a matrix is a dict mapping (row, col) to a nonzero int, together with explicit
row and column counts.  All pivot choices are deterministic, so repeated runs
produce identical transforms and certificates.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .chains import add_into, diff, pair
from .errors import CertificateError, InvalidComplexError


# ---------------------------------------------------------------------------
# sparse worker
# ---------------------------------------------------------------------------

class _Worker:
    """Row-major sparse matrix supporting the unimodular ops SNF needs.

    rows[i] is a dict col -> value; colnz[j] is the set of rows with a nonzero
    in column j.  The two are kept consistent by every mutator.
    """

    def __init__(self, entries, nrows, ncols):
        self.nr = nrows
        self.nc = ncols
        self.rows = [dict() for _ in range(nrows)]
        self.colnz = [set() for _ in range(ncols)]
        for (i, j), v in entries.items():
            if v:
                if not (0 <= i < nrows and 0 <= j < ncols):
                    raise InvalidComplexError(f"entry ({i},{j}) outside matrix")
                self.rows[i][j] = v
                self.colnz[j].add(i)

    def get(self, i, j):
        return self.rows[i].get(j, 0)

    def _set(self, i, j, v):
        if v:
            self.rows[i][j] = v
            self.colnz[j].add(i)
        else:
            if j in self.rows[i]:
                del self.rows[i][j]
                self.colnz[j].discard(i)

    def add_row(self, dst, src, k):
        """row[dst] += k * row[src]"""
        if k == 0:
            return
        for j, v in list(self.rows[src].items()):
            self._set(dst, j, self.rows[dst].get(j, 0) + k * v)

    def add_col(self, dst, src, k):
        """col[dst] += k * col[src]"""
        if k == 0:
            return
        for i in list(self.colnz[src]):
            self._set(i, dst, self.rows[i].get(dst, 0) + k * self.rows[i][src])

    def swap_rows(self, a, b):
        if a == b:
            return
        for j in set(self.rows[a]) | set(self.rows[b]):
            self.colnz[j].discard(a)
            self.colnz[j].discard(b)
        self.rows[a], self.rows[b] = self.rows[b], self.rows[a]
        for j in self.rows[a]:
            self.colnz[j].add(a)
        for j in self.rows[b]:
            self.colnz[j].add(b)

    def swap_cols(self, a, b):
        if a == b:
            return
        for i in self.colnz[a] | self.colnz[b]:
            r = self.rows[i]
            va, vb = r.get(a, 0), r.get(b, 0)
            self._set(i, a, vb)
            self._set(i, b, va)

    def negate_row(self, i):
        for j in self.rows[i]:
            self.rows[i][j] = -self.rows[i][j]

    def negate_col(self, j):
        for i in self.colnz[j]:
            self.rows[i][j] = -self.rows[i][j]

    def to_entries(self):
        out = {}
        for i, r in enumerate(self.rows):
            for j, v in r.items():
                out[(i, j)] = v
        return out


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------

@dataclass
class SnfResult:
    """U @ A @ V == diag(divisors) with U, V unimodular.

    divisors are the nonzero diagonal entries, positive, each dividing the
    next.  U and V are sparse entry dicts when tracked, else None.
    """

    nrows: int
    ncols: int
    divisors: list
    U: dict | None
    V: dict | None

    @property
    def rank(self):
        return len(self.divisors)

    def torsion(self):
        return [d for d in self.divisors if d > 1]


def _pick_pivot(a, t):
    """Deterministic pivot in the active submatrix [t:, t:].

    First nonzero of absolute value 1 in column-scan order wins; otherwise the
    entry minimizing (abs, col, row).
    """
    best = None
    for j in range(t, a.nc):
        for i in sorted(a.colnz[j]):
            if i < t:
                continue
            v = abs(a.rows[i][j])
            if v == 1:
                return i, j
            if best is None or v < best[0]:
                best = (v, j, i)
    if best is None:
        return None
    return best[2], best[1]


def snf(entries, nrows, ncols, track_u=True, track_v=True):
    """Smith normal form over the integers with optional transform tracking."""
    a = _Worker(entries, nrows, ncols)
    u = _Worker({(i, i): 1 for i in range(nrows)}, nrows, nrows) if track_u else None
    v = _Worker({(i, i): 1 for i in range(ncols)}, ncols, ncols) if track_v else None

    t = 0
    limit = min(nrows, ncols)
    divisors = []
    while t < limit:
        pv = _pick_pivot(a, t)
        if pv is None:
            break
        i, j = pv
        a.swap_rows(t, i)
        if u:
            u.swap_rows(t, i)
        a.swap_cols(t, j)
        if v:
            v.swap_cols(t, j)

        while True:
            p = a.get(t, t)
            if p < 0:
                a.negate_row(t)
                if u:
                    u.negate_row(t)
                p = -p
            # clear column t
            dirty = False
            for i in sorted(r for r in a.colnz[t] if r != t):
                q, r = divmod(a.rows[i][t], p)
                a.add_row(i, t, -q)
                if u:
                    u.add_row(i, t, -q)
                if r:
                    a.swap_rows(t, i)
                    if u:
                        u.swap_rows(t, i)
                    dirty = True
                    break
            if dirty:
                continue
            # clear row t
            for j in sorted(c for c in a.rows[t] if c != t):
                q, r = divmod(a.rows[t][j], p)
                a.add_col(j, t, -q)
                if v:
                    v.add_col(j, t, -q)
                if r:
                    a.swap_cols(t, j)
                    if v:
                        v.swap_cols(t, j)
                    dirty = True
                    break
            if dirty:
                continue
            if len(a.rows[t]) == 1 and len(a.colnz[t]) == 1:
                break
        # divisibility fix-up: the pivot must divide the rest of the matrix
        p = a.get(t, t)
        if p != 1:
            offender = None
            for i in range(t + 1, nrows):
                for j, vv in a.rows[i].items():
                    if vv % p:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is not None:
                a.add_row(t, offender, 1)
                if u:
                    u.add_row(t, offender, 1)
                continue  # redo stage t with the merged row
        t += 1

    # Re-run divisibility condition check; restart stages if violated.  The
    # loop above already performs the classical fix-up inline, but a final
    # audit keeps the contract explicit.
    divisors = []
    for k in range(limit):
        d = a.get(k, k)
        if d == 0:
            break
        divisors.append(abs(d))
    for x, y in zip(divisors, divisors[1:]):
        if y % x:
            raise AssertionError("snf divisor chain broken; pivoting bug")

    return SnfResult(nrows, ncols, divisors,
                     u.to_entries() if u else None,
                     v.to_entries() if v else None)


def snf_verify(entries, nrows, ncols, res):
    """Check U @ A @ V == diag(divisors) entry by entry."""
    if res.U is None or res.V is None:
        raise CertificateError("snf transforms were not tracked")
    ua = {}
    by_row = {}
    for (i, j), v in entries.items():
        by_row.setdefault(i, {})[j] = v
    urows = {}
    for (i, j), v in res.U.items():
        urows.setdefault(i, {})[j] = v
    for i in range(nrows):
        acc = {}
        for k, uv in urows.get(i, {}).items():
            for j, av in by_row.get(k, {}).items():
                add_into(acc, j, uv * av)
        for j, vv in acc.items():
            ua[(i, j)] = vv
    vcols = {}
    for (i, j), v in res.V.items():
        vcols.setdefault(j, {})[i] = v
    for i in range(nrows):
        for j in range(ncols):
            acc = 0
            for k, vv in vcols.get(j, {}).items():
                acc += ua.get((i, k), 0) * vv
            want = res.divisors[i] if (i == j and i < res.rank) else 0
            if acc != want:
                return False
    return True


# ---------------------------------------------------------------------------
# integer solve with witness
# ---------------------------------------------------------------------------

@dataclass
class InfeasibilityWitness:
    """Rational row vector y with y @ A integral but y @ b not integral.

    Existence of such y proves A x = b has no integer solution; verification
    is plain arithmetic and never reruns the solver.
    """

    numerators: dict
    denominator: int

    def verify(self, entries, nrows, ncols, b):
        cols = {}
        for (i, j), v in entries.items():
            if i in self.numerators:
                cols[j] = cols.get(j, 0) + self.numerators[i] * v
        if any(c % self.denominator for c in cols.values()):
            return False
        yb = sum(n * b.get(i, 0) for i, n in self.numerators.items())
        return yb % self.denominator != 0


def _components(entries, nrows, ncols):
    """Connected components of the bipartite nonzero pattern (rows + cols)."""
    parent = list(range(nrows + ncols))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[rx] = ry

    for (i, j) in entries:
        union(i, nrows + j)
    comp = {}
    for i in range(nrows):
        comp.setdefault(find(i), [set(), set()])[0].add(i)
    for j in range(ncols):
        comp.setdefault(find(nrows + j), [set(), set()])[1].add(j)
    return list(comp.values())


def solve_with_witness(entries, nrows, ncols, b):
    """Solve A x = b over the integers.

    Returns (x, None) with x a sparse dict on success, or (None, witness)
    where the witness certifies infeasibility.  The system is first split
    into connected components of its nonzero pattern so independent blocks
    are solved independently.
    """
    b = {i: v for i, v in b.items() if v}
    for i in b:
        if not 0 <= i < nrows:
            raise InvalidComplexError("right-hand side row out of range")
    x = {}
    for rows, cols in _components(entries, nrows, ncols):
        sub_b = {i: b[i] for i in rows if i in b}
        if not cols:
            # rows with no nonzero entries at all: b must vanish there
            for i in rows:
                if i in sub_b:
                    return None, InfeasibilityWitness({i: 1}, 2 * abs(sub_b[i]))
            continue
        if not sub_b:
            continue
        rlist = sorted(rows)
        clist = sorted(cols)
        rmap = {i: k for k, i in enumerate(rlist)}
        cmap = {j: k for k, j in enumerate(clist)}
        sub = {(rmap[i], cmap[j]): v for (i, j), v in entries.items()
               if i in rows}
        res = snf(sub, len(rlist), len(clist), track_u=True, track_v=True)
        urows = {}
        for (i, j), v in res.U.items():
            urows.setdefault(i, {})[j] = v
        c = {}
        for i in range(len(rlist)):
            acc = sum(v * sub_b.get(rlist[j], 0) for j, v in urows.get(i, {}).items())
            if acc:
                c[i] = acc
        y = {}
        witness = None
        for i, ci in c.items():
            if i < res.rank:
                d = res.divisors[i]
                q, r = divmod(ci, d)
                if r:
                    witness = (i, d)
                    break
                y[i] = q
            else:
                witness = (i, 2 * abs(ci))
                break
        if witness is not None:
            wi, den = witness
            nums = {rlist[j]: v for j, v in urows.get(wi, {}).items()}
            return None, InfeasibilityWitness(nums, den)
        vcols = {}
        for (i, j), v in res.V.items():
            vcols.setdefault(j, {})[i] = v
        for j, yj in y.items():
            for i, v in vcols.get(j, {}).items():
                add_into(x, clist[i], yj * v)
    return x, None


def solve_integer(entries, nrows, ncols, b):
    """Solve A x = b over the integers; returns a sparse dict or None."""
    x, w = solve_with_witness(entries, nrows, ncols, b)
    return x


def matrix_apply(entries, x):
    """A @ x for sparse A (dict keyed (i, j)) and sparse vector x."""
    out = {}
    for (i, j), v in entries.items():
        if j in x:
            add_into(out, i, v * x[j])
    return out


# ---------------------------------------------------------------------------
# sign characters
# ---------------------------------------------------------------------------

def perm_sign(perm):
    """Sign of a permutation given in one-line notation."""
    n = len(perm)
    seen = [False] * n
    sign = 1
    for i in range(n):
        if seen[i]:
            continue
        ln = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            ln += 1
        if ln % 2 == 0:
            sign = -sign
    return sign


CHARACTERS = ("trivial", "sign", "sign_d")


def character_value(name, perm, d=0):
    """Value of the named Sigma_n character on perm; sign_d means sign**d."""
    if name == "trivial":
        return 1
    if name == "sign":
        return perm_sign(perm)
    if name == "sign_d":
        return perm_sign(perm) if d % 2 else 1
    raise InvalidComplexError(f"unknown character {name!r}")


# ---------------------------------------------------------------------------
# equivariant cochain complexes
# ---------------------------------------------------------------------------

class EquivariantComplex:
    """Orbit-reduced cochain complex of a free cellular Sigma_n action.

    Built from any object exposing:
      * group(): list of permutations in one-line notation,
      * degrees(): iterable of available cell degrees,
      * cells_of_dim(d): sorted cell list,
      * boundary(cell): sparse chain on cells of one lower degree,
      * act(perm, cell) -> (image cell, sign), the linear action on generators.

    An equivariant cochain with character chi satisfies phi(g . x) =
    chi(g) phi(x), where g . x carries the action sign.  Such a cochain is
    determined by its values on the lexicographically least cell of each
    orbit; coboundaries of reduced cochains are computed by the reduced
    twisted matrices this class assembles.
    """

    def __init__(self, dp, character, char_degree=0):
        if character not in CHARACTERS:
            raise InvalidComplexError(f"unknown character {character!r}")
        self.dp = dp
        self.character = character
        self.char_degree = char_degree
        self.group = dp.group()
        self.reps = {}        # degree -> sorted list of orbit representatives
        self.rep_index = {}   # degree -> {rep: position}
        self.to_rep = {}      # cell -> (rep, chi(g) * sign factor)
        for d in dp.degrees():
            cells = dp.cells_of_dim(d)
            seen = set()
            reps = []
            for cell in cells:
                if cell in seen:
                    continue
                reps.append(cell)
                for g in self.group:
                    img, sgn = dp.act(g, cell)
                    seen.add(img)
                    chi = character_value(character, g, char_degree)
                    # phi(img) = sgn * chi(g) * phi(rep); sgn in {+1, -1}
                    prev = self.to_rep.get(img)
                    factor = sgn * chi
                    if prev is None:
                        self.to_rep[img] = (cell, factor)
                    elif prev[1] != factor or prev[0] != cell:
                        raise InvalidComplexError(
                            "character is inconsistent on an orbit; "
                            "the action is not free or signs clash")
            self.reps[d] = reps
            self.rep_index[d] = {r: i for i, r in enumerate(reps)}
            if len(cells) != len(reps) * len(self.group):
                raise InvalidComplexError("orbit sizes inconsistent with a free action")

    def orbit_count(self, d):
        return len(self.reps.get(d, []))

    def unfold(self, degree, values):
        """Expand orbit-representative values to a full cellular cochain."""
        out = {}
        for cell in self.dp.cells_of_dim(degree):
            rep, factor = self.to_rep[cell]
            v = values.get(rep, 0)
            if v:
                out[cell] = factor * v
        return out

    def fold(self, degree, cochain, check=True):
        """Restrict a full cochain to orbit reps, verifying equivariance."""
        values = {}
        for rep in self.reps[degree]:
            v = cochain.get(rep, 0)
            if v:
                values[rep] = v
        if check:
            for cell, v in cochain.items():
                rep, factor = self.to_rep[cell]
                if v != factor * values.get(rep, 0):
                    raise InvalidComplexError(
                        "cochain is not equivariant for the chosen character")
        return values

    def reduced_coboundary(self, k):
        """Matrix of the reduced coboundary from degree-k to degree-(k+1)
        orbit cochains; rows index (k+1)-reps, columns index k-reps."""
        mat = {}
        rows = self.reps.get(k + 1, [])
        cidx = self.rep_index.get(k, {})
        for i, rep in enumerate(rows):
            for face, coeff in self.dp.boundary(rep).items():
                frep, factor = self.to_rep[face]
                j = cidx.get(frep)
                if j is None:
                    continue
                key = (i, j)
                v = mat.get(key, 0) + coeff * factor
                if v:
                    mat[key] = v
                elif key in mat:
                    del mat[key]
        return mat

    def coboundary_values(self, k, values):
        """delta-bar of a reduced degree-k cochain, as reduced (k+1)-values."""
        if k + 1 not in self.reps or k not in self.reps or not values:
            return {}
        mat = self.reduced_coboundary(k)
        col = self.rep_index[k]
        vec = {col[r]: v for r, v in values.items() if v}
        out_idx = matrix_apply(mat, vec)
        reps = self.reps[k + 1]
        return {reps[i]: v for i, v in out_idx.items()}

    def check_dd_zero(self):
        """delta-bar composed with itself vanishes on every available degree."""
        degs = sorted(self.reps)
        for k in degs:
            if k + 1 not in self.reps or k + 2 not in self.reps:
                continue
            a = self.reduced_coboundary(k)
            bmat = self.reduced_coboundary(k + 1)
            acc = {}
            acols = {}
            for (i, j), v in a.items():
                acols.setdefault(j, {})[i] = v
            for (i, k2), v in bmat.items():
                for j, w in acols.items():
                    if k2 in w:
                        key = (i, j)
                        s = acc.get(key, 0) + v * w[k2]
                        if s:
                            acc[key] = s
                        elif key in acc:
                            del acc[key]
            if acc:
                raise AssertionError("reduced coboundary does not square to zero")
        return True


class TrivialActionView:
    """Wrap any cellular complex as one with a trivial one-element action,
    so the orbit-reduced machinery (and its certificates) applies to plain
    cochains verbatim."""

    def __init__(self, base):
        self.base = base

    def group(self):
        return [(0,)]

    def degrees(self):
        return self.base.degrees()

    def cells_of_dim(self, d):
        return self.base.cells_of_dim(d)

    def boundary(self, cell):
        return self.base.boundary(cell)

    def act(self, perm, cell):
        return cell, 1


def plain_complex(base, character="trivial"):
    """EquivariantComplex over the trivial action on a cellular complex."""
    return EquivariantComplex(TrivialActionView(base), character)


def equivariant_cohomology(eq, k):
    """(free rank, torsion divisors) of the degree-k reduced cohomology."""
    n_k = eq.orbit_count(k)
    dk = eq.reduced_coboundary(k) if (k + 1) in eq.reps else {}
    dk1 = eq.reduced_coboundary(k - 1) if (k - 1) in eq.reps else {}
    r_k = snf(dk, eq.orbit_count(k + 1), n_k,
              track_u=False, track_v=False).rank
    res_prev = snf(dk1, n_k, eq.orbit_count(k - 1),
                   track_u=False, track_v=False)
    rank = n_k - r_k - res_prev.rank
    return rank, res_prev.torsion()


# ---------------------------------------------------------------------------
# certificates
# ---------------------------------------------------------------------------

ZERO_WITH_PRIMITIVE = "zero_with_primitive"
NONZERO_BY_INFEASIBILITY = "nonzero_by_infeasibility"
NONZERO_BY_PAIRING = "nonzero_by_pairing"


@dataclass
class Certificate:
    """Outcome of a class computation, re-verifiable by plain arithmetic.

    kind selects the payload:
      * zero_with_primitive: payload["primitive"] is a reduced cochain x with
        delta-bar x equal to the stored cocycle;
      * nonzero_by_infeasibility: payload["witness"] is an
        InfeasibilityWitness for the reduced system;
      * nonzero_by_pairing: payload["cycle"] is a cellular cycle z and
        payload["value"] the nonzero pairing against the unfolded cocycle.
    """

    kind: str
    degree: int
    character: str
    char_degree: int
    cocycle: dict
    payload: dict = field(default_factory=dict)

    def verify(self, eq):
        c = self.cocycle
        if self.kind == ZERO_WITH_PRIMITIVE:
            got = eq.coboundary_values(self.degree - 1, self.payload["primitive"])
            return diff(got, c) == {}
        if self.kind == NONZERO_BY_INFEASIBILITY:
            mat = eq.reduced_coboundary(self.degree - 1)
            ridx = eq.rep_index[self.degree]
            b = {ridx[r]: v for r, v in c.items()}
            w = self.payload["witness"]
            return w.verify(mat, eq.orbit_count(self.degree),
                            eq.orbit_count(self.degree - 1), b)
        if self.kind == NONZERO_BY_PAIRING:
            z = self.payload["cycle"]
            bd = {}
            for cell, coeff in z.items():
                for f, e in eq.dp.boundary(cell).items():
                    add_into(bd, f, coeff * e)
            if bd:
                return False
            full = eq.unfold(self.degree, c)
            return pair(full, z) == self.payload["value"] != 0
        raise CertificateError(f"unknown certificate kind {self.kind!r}")


def class_status(eq, degree, values, cycles=()):
    """Certify whether a reduced equivariant cocycle is a coboundary.

    values maps orbit representatives of the given degree to ints.  Cycles,
    when provided, are cellular cycles tried first: a nonzero pairing against
    any of them proves the class nonzero without solving anything (a reduced
    coboundary unfolds to an honest coboundary, which pairs to zero with every
    cycle).  Otherwise the reduced system delta-bar x = c is solved exactly:
    a solution is a primitive, an infeasibility witness proves nonvanishing.
    """
    values = {r: v for r, v in values.items() if v}
    if degree + 1 in eq.reps:
        up = eq.coboundary_values(degree, values)
        if up:
            raise InvalidComplexError("input cochain is not a cocycle")
    if not values:
        cert = Certificate(ZERO_WITH_PRIMITIVE, degree, eq.character,
                           eq.char_degree, {}, {"primitive": {}})
        if not cert.verify(eq):
            raise CertificateError("certificate failed self-check")
        return cert
    full = None
    for z in cycles:
        if full is None:
            full = eq.unfold(degree, values)
        val = pair(full, z)
        if val:
            cert = Certificate(NONZERO_BY_PAIRING, degree, eq.character,
                               eq.char_degree, values,
                               {"cycle": z, "value": val})
            if not cert.verify(eq):
                raise CertificateError("pairing certificate failed self-check")
            return cert
    mat = eq.reduced_coboundary(degree - 1)
    nrows = eq.orbit_count(degree)
    ncols = eq.orbit_count(degree - 1)
    ridx = eq.rep_index[degree]
    b = {ridx[r]: v for r, v in values.items()}
    x, witness = solve_with_witness(mat, nrows, ncols, b)
    if x is not None:
        reps = eq.reps[degree - 1]
        prim = {reps[j]: v for j, v in x.items() if v}
        cert = Certificate(ZERO_WITH_PRIMITIVE, degree, eq.character,
                           eq.char_degree, values, {"primitive": prim})
    else:
        cert = Certificate(NONZERO_BY_INFEASIBILITY, degree, eq.character,
                           eq.char_degree, values, {"witness": witness})
    if not cert.verify(eq):
        raise CertificateError("certificate failed self-check")
    return cert


# ---------------------------------------------------------------------------
# matrix JSON, CLI facing
# ---------------------------------------------------------------------------

def matrix_from_json(obj):
    try:
        nrows, ncols = int(obj["rows"]), int(obj["cols"])
        entries = {}
        for i, j, v in obj["entries"]:
            if v:
                entries[(int(i), int(j))] = int(v)
    except (KeyError, TypeError, ValueError) as e:
        raise InvalidComplexError(f"matrix JSON malformed: {e}") from e
    return entries, nrows, ncols


def matrix_to_json(entries, nrows, ncols):
    items = sorted(entries.items())
    return {"rows": nrows, "cols": ncols,
            "entries": [[i, j, v] for (i, j), v in items]}
