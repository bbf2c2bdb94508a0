"""Finite abstract simplicial complexes with integer vertex ids.

A simplex is a tuple of strictly increasing vertex ids; its dimension is
len - 1.  A complex stores every face explicitly and keeps, per dimension, a
lexicographically sorted simplex list so that all downstream constructions
iterate in a reproducible order.
"""

from __future__ import annotations

import json
from itertools import combinations

from .chains import add_into
from .errors import InvalidComplexError


def check_simplex(s):
    """Return s as a tuple after checking strictly increasing vertex ids."""
    t = tuple(s)
    if len(t) == 0:
        raise InvalidComplexError("empty simplex")
    for v in t:
        if not isinstance(v, int) or v < 0:
            raise InvalidComplexError(f"bad vertex id {v!r} in simplex {t}")
    if any(a >= b for a, b in zip(t, t[1:])):
        raise InvalidComplexError(f"vertices not strictly increasing in {t}")
    return t


def faces(simplex):
    """All nonempty faces of a simplex, the simplex itself included."""
    out = []
    for k in range(1, len(simplex) + 1):
        out.extend(combinations(simplex, k))
    return out


def boundary(simplex):
    """Boundary chain of an oriented simplex: alternating sum of vertex drops."""
    out = {}
    if len(simplex) == 1:
        return out
    sign = 1
    for i in range(len(simplex)):
        face = simplex[:i] + simplex[i + 1:]
        add_into(out, face, sign)
        sign = -sign
    return out


def boundary_chain(chain):
    """Boundary of a sparse chain of simplices."""
    out = {}
    for s, c in chain.items():
        for f, e in boundary(s).items():
            add_into(out, f, c * e)
    return out


class SimplicialComplex:
    """Face-closed collection of simplices with optional named tags.

    Tags name subcomplexes (lists of simplices) used to address cycles such as
    spheres and loops from the command line and from certificates.
    """

    def __init__(self, maximal_simplices, name="", tags=None):
        self.name = name
        self.tags = {}
        sset = set()
        for s in maximal_simplices:
            sset.update(faces(check_simplex(s)))
        self.simplices = {}
        for s in sset:
            self.simplices.setdefault(len(s) - 1, []).append(s)
        for d in self.simplices:
            self.simplices[d].sort()
        self._index = {}
        for d, lst in self.simplices.items():
            for i, s in enumerate(lst):
                self._index[s] = i
        if tags:
            for key, lst in tags.items():
                self.tags[key] = [check_simplex(s) for s in lst]
                for s in self.tags[key]:
                    if s not in self._index:
                        raise InvalidComplexError(
                            f"tag {key!r} names simplex {s} outside the complex")

    # -- queries ---------------------------------------------------------

    @property
    def dim(self):
        return max(self.simplices) if self.simplices else -1

    def simplices_of_dim(self, d):
        return self.simplices.get(d, [])

    def all_simplices(self):
        for d in sorted(self.simplices):
            yield from self.simplices[d]

    def __contains__(self, s):
        return tuple(s) in self._index

    def index(self, s):
        return self._index[tuple(s)]

    def n_vertices(self):
        return len(self.simplices_of_dim(0))

    def vertices(self):
        return [s[0] for s in self.simplices_of_dim(0)]

    def maximal_simplices(self):
        """Simplices that are not a proper face of another simplex."""
        non_max = set()
        for s in self.all_simplices():
            for f in faces(s):
                if f != s:
                    non_max.add(f)
        return [s for s in self.all_simplices() if s not in non_max]

    def census(self):
        return {d: len(lst) for d, lst in sorted(self.simplices.items())}

    # -- validation ------------------------------------------------------

    def validate(self):
        """Re-check closure and orderings; returns the census on success."""
        for d, lst in self.simplices.items():
            for s in lst:
                check_simplex(s)
                if len(s) - 1 != d:
                    raise InvalidComplexError(f"simplex {s} filed under dim {d}")
                for f in faces(s):
                    if f not in self._index:
                        raise InvalidComplexError(f"face {f} of {s} missing")
            if lst != sorted(lst):
                raise InvalidComplexError(f"dimension {d} list not sorted")
        return self.census()

    # -- boundary matrix -------------------------------------------------

    def boundary_matrix(self, d):
        """Sparse boundary matrix from dim-d chains to dim-(d-1) chains.

        Returned as a dict mapping (row, col) to the incidence coefficient,
        with rows indexing (d-1)-simplices and columns indexing d-simplices.
        """
        mat = {}
        lower = self.simplices_of_dim(d - 1)
        if not lower:
            return mat
        for j, s in enumerate(self.simplices_of_dim(d)):
            for f, c in boundary(s).items():
                mat[(self._index[f], j)] = c
        return mat

    # -- serialization ---------------------------------------------------

    def to_json(self):
        return {
            "name": self.name,
            "maximal_simplices": [list(s) for s in self.maximal_simplices()],
            "tags": {k: [list(s) for s in v] for k, v in self.tags.items()},
        }

    @classmethod
    def from_json(cls, obj):
        if not isinstance(obj, dict) or "maximal_simplices" not in obj:
            raise InvalidComplexError("complex JSON needs a maximal_simplices key")
        return cls(obj["maximal_simplices"],
                   name=obj.get("name", ""),
                   tags=obj.get("tags") or None)

    def dumps(self):
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def loads(cls, text):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as e:
            raise InvalidComplexError(f"complex JSON unreadable: {e}") from e
        return cls.from_json(obj)


def tagged_cycle(complex_, tag, dim):
    """Fundamental cycle of a tagged closed subcomplex, as a sparse chain.

    The tag must name a list of dim-simplices whose span carries a rank-one
    cycle space in that dimension (a closed pseudo-manifold such as a sphere,
    torus or polygonal loop).  The generator is normalized to content 1 with
    a positive coefficient on the lexicographically least simplex.
    """
    if tag not in complex_.tags:
        raise InvalidComplexError(f"no tag {tag!r} on complex {complex_.name!r}")
    tops = sorted(complex_.tags[tag])
    if any(len(s) - 1 != dim for s in tops):
        raise InvalidComplexError(f"tag {tag!r} is not pure of dimension {dim}")
    # Solve for coefficients making the boundary vanish by propagating along
    # shared faces: each interior (dim-1)-face must appear exactly twice with
    # cancelling incidence.
    from .zlinalg import solve_integer  # local import to avoid a cycle

    cols = {s: j for j, s in enumerate(tops)}
    rows = {}
    entries = {}
    for s, j in cols.items():
        for f, c in boundary(s).items():
            i = rows.setdefault(f, len(rows))
            entries[(i, j)] = c
    # Kernel of the boundary restricted to the tag: find it by solving the
    # homogeneous system with one coefficient pinned to 1.
    pinned = 0
    a = dict(entries)
    nrows = len(rows)
    for j in range(len(tops)):
        a[(nrows, j)] = 1 if j == pinned else 0
    b = {nrows: 1}
    sol = solve_integer(a, nrows + 1, len(tops), b)
    if sol is None:
        raise InvalidComplexError(f"tag {tag!r} does not carry a cycle with "
                                  "coefficient 1 on its least simplex")
    x = sol
    chain = {}
    for s, j in cols.items():
        add_into(chain, s, x.get(j, 0))
    bd = boundary_chain(chain)
    if bd:
        raise InvalidComplexError(f"tag {tag!r} cycle solve left a boundary")
    return chain
