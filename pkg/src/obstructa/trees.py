"""Labeled trivalent trees modulo antisymmetry and Jacobi relations.

The group of order m is generated by trees with m internal vertices and
m + 2 distinct leaf labels, each internal vertex carrying a cyclic order
of its three edges.  A tree is stored as a nested pair: a leaf label, or
a pair of subtrees whose written order records the cyclic orientation as
read after the edge toward the parent.  A whole tree is the pair of
subtrees on either side of one of its edges; which edge the encoding
singles out carries no information.

Reduction roots the tree at its largest leaf, expands the resulting
bracket word in noncommuting letters, and reads off coordinates in the
basis of left-nested brackets led by the smallest leaf.  The claimed
coordinates are re-expanded and compared to the original expansion, so
every reduction certifies itself.  tree_group builds the same group a
second way, from generators and relation rows alone, and puts the
relation matrix in Smith normal form; agreement of the two routes is
what the tests check.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .chains import add_into
from .errors import CertificateError, InvalidComplexError, SizeGuardError
from .zlinalg import snf


# ---------------------------------------------------------------------------
# nested-pair trees
# ---------------------------------------------------------------------------

def is_leaf(t):
    return not isinstance(t, tuple)


def _collect(t, acc):
    if is_leaf(t):
        acc.append(t)
        return
    if len(t) != 2:
        raise InvalidComplexError(f"tree node {t!r} is not a pair")
    _collect(t[0], acc)
    _collect(t[1], acc)


def tree_leaves(t):
    """Sorted tuple of leaf labels; a repeated label is rejected."""
    acc = []
    _collect(t, acc)
    if len(set(acc)) != len(acc):
        raise InvalidComplexError(
            f"tree repeats a leaf label: {sorted(acc)}")
    return tuple(sorted(acc))


def _has(t, x):
    if is_leaf(t):
        return t == x
    return _has(t[0], x) or _has(t[1], x)


def relabel_tree(t, mapping):
    if is_leaf(t):
        return mapping[t]
    return (relabel_tree(t[0], mapping), relabel_tree(t[1], mapping))


def root_at_largest(t):
    """Bracket expression of the tree as seen from its largest leaf.

    Walks toward the largest leaf one internal vertex at a time, rotating
    the cyclic order at each crossed vertex, so the result depends only on
    the oriented tree and not on which edge the nested-pair encoding
    happened to single out.  Returns (expression, largest leaf).
    """
    if is_leaf(t):
        raise InvalidComplexError("a single leaf is not a tree")
    top = max(tree_leaves(t))
    while True:
        left, right = t
        if _has(left, top):
            left, right = right, left
        if is_leaf(right):
            return left, top
        r1, r2 = right
        if _has(r1, top):
            t = ((r2, left), r1)
        else:
            t = ((left, r1), r2)


# ---------------------------------------------------------------------------
# reduction through the tensor expansion
# ---------------------------------------------------------------------------

def _expand(expr):
    if is_leaf(expr):
        return {(expr,): 1}
    a = _expand(expr[0])
    b = _expand(expr[1])
    out = {}
    for u, cu in a.items():
        for w, cw in b.items():
            add_into(out, u + w, cu * cw)
            add_into(out, w + u, -cu * cw)
    return out


def _left_nested(first, rest):
    expr = first
    for x in rest:
        expr = (expr, x)
    return expr


def reduce_expr(expr):
    """Coordinates of a bracket expression in the left-nested basis.

    Keys are the letter orders after the smallest letter: the coefficient
    of the basis bracket that nests the smallest letter leftward through
    the key.  Candidate coordinates are read off the words that start with
    the smallest letter, then re-expanded and compared against the full
    expansion; an expression outside the basis span raises instead of
    mis-reducing.
    """
    exp = _expand(expr)
    letters = sorted({x for w in exp for x in w})
    if not letters:
        return {}
    first = letters[0]
    coords = {w[1:]: c for w, c in exp.items() if w[0] == first}
    check = {}
    for rest, c in sorted(coords.items()):
        for w, e in _expand(_left_nested(first, rest)).items():
            add_into(check, w, c * e)
    if check != exp:
        raise CertificateError(
            "bracket expression does not reduce to the left-nested basis")
    return coords


# ---------------------------------------------------------------------------
# elements
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TreeGroupElement:
    """Integer combination of basis trees on a fixed leaf-label set.

    The basis of the order-m group is indexed by the orders of the middle
    labels, everything except the least and the greatest: the basis tree
    nests the least label leftward through the key and roots at the
    greatest.  coords is a sorted tuple of (key, coefficient) pairs, so
    elements compare and hash by value.
    """

    labels: tuple
    coords: tuple

    @property
    def order(self):
        return len(self.labels) - 2

    def as_dict(self):
        return dict(self.coords)

    def coeff(self, key):
        return self.as_dict().get(tuple(key), 0)

    def is_zero(self):
        return not self.coords

    def _merge(self, other, flip):
        if not isinstance(other, TreeGroupElement):
            return NotImplemented
        if other.labels != self.labels:
            raise InvalidComplexError(
                f"elements mix leaf sets {self.labels} and {other.labels}")
        total = self.as_dict()
        for k, v in other.coords:
            add_into(total, k, flip * v)
        return _element(self.labels, total)

    def __add__(self, other):
        return self._merge(other, 1)

    def __sub__(self, other):
        return self._merge(other, -1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, k):
        return _element(self.labels, {key: k * v for key, v in self.coords})


def _element(labels, coords):
    items = tuple(sorted((tuple(k), v) for k, v in coords.items() if v))
    return TreeGroupElement(tuple(labels), items)


def zero_element(labels):
    return _element(tuple(sorted(labels)), {})


def basis_tree(labels, key):
    """The caterpillar tree of one basis coordinate."""
    labels = tuple(sorted(labels))
    if tuple(sorted(key)) != labels[1:-1]:
        raise InvalidComplexError(
            f"key {tuple(key)!r} does not order the middle labels of {labels}")
    return (_left_nested(labels[0], key), labels[-1])


def reduce_tree(tree, sign=1):
    """Canonical coordinates of one oriented tree, scaled by sign."""
    labels = tree_leaves(tree)
    expr, _top = root_at_largest(tree)
    coords = reduce_expr(expr)
    if sign != 1:
        coords = {k: sign * v for k, v in coords.items()}
    return _element(labels, coords)


def combine_trees(items, labels=None):
    """Reduce a signed list of trees over one common leaf-label set."""
    total = {}
    seen = tuple(sorted(labels)) if labels is not None else None
    for sign, tree in items:
        lv = tree_leaves(tree)
        if seen is None:
            seen = lv
        elif lv != seen:
            raise InvalidComplexError(f"trees mix leaf sets {seen} and {lv}")
        for k, v in reduce_tree(tree, sign).coords:
            add_into(total, k, v)
    if seen is None:
        raise InvalidComplexError("no trees given and no label set to default to")
    return _element(seen, total)


def relabel_element(elem, mapping):
    """Push an element along an injective leaf relabeling.

    Each basis tree is relabeled and re-reduced, so the result is honest
    coordinates over the image labels rather than renamed keys.
    """
    img = [mapping[l] for l in elem.labels]
    if len(set(img)) != len(img):
        raise InvalidComplexError("relabeling collapses leaf labels")
    total = {}
    for key, c in elem.coords:
        t = relabel_tree(basis_tree(elem.labels, key), mapping)
        for k, v in reduce_tree(t, c).coords:
            add_into(total, k, v)
    return _element(sorted(img), total)


def action_matrix(labels, mapping):
    """Image coordinates of every basis tree under a self-relabeling.

    Returns {key: column} where column maps image keys to coefficients;
    applying the matrix to coordinates must agree with relabeling first
    and reducing after, which is the consistency the tests exercise.
    """
    labels = tuple(sorted(labels))
    if sorted(mapping) != list(labels) or sorted(mapping.values()) != list(labels):
        raise InvalidComplexError("the mapping must permute the label set")
    cols = {}
    for key in itertools.permutations(labels[1:-1]):
        cols[key] = relabel_element(_element(labels, {key: 1}), mapping).as_dict()
    return cols


def apply_action_matrix(matrix, elem):
    total = {}
    for key, c in elem.coords:
        for k, v in matrix[key].items():
            add_into(total, k, c * v)
    return _element(elem.labels, total)


# ---------------------------------------------------------------------------
# the group by generators and relations
# ---------------------------------------------------------------------------

def _tree_key(t):
    if is_leaf(t):
        return (0, t)
    return (1, _tree_key(t[0]), _tree_key(t[1]))


def _min_leaf(t):
    if is_leaf(t):
        return t
    return min(_min_leaf(t[0]), _min_leaf(t[1]))


def _shapes(labels):
    """All rooted binary trees on the labels, children ordered so the least
    label of a node sits in its left child."""
    if len(labels) == 1:
        yield labels[0]
        return
    first, rest = labels[0], labels[1:]
    for k in range(len(rest)):
        for extra in itertools.combinations(rest, k):
            left = (first,) + extra
            right = tuple(x for x in rest if x not in extra)
            if not right:
                continue
            for ls in _shapes(left):
                for rs in _shapes(right):
                    yield (ls, rs)


def _orientations(shape):
    """Every assignment of child orders to the internal vertices."""
    if is_leaf(shape):
        yield shape
        return
    a, b = shape
    for oa in _orientations(a):
        for ob in _orientations(b):
            yield (oa, ob)
            yield (ob, oa)


def canon_expr(expr):
    """Antisymmetry-normal form of a rooted expression, with its sign."""
    if is_leaf(expr):
        return 1, expr
    sa, a = canon_expr(expr[0])
    sb, b = canon_expr(expr[1])
    if _min_leaf(a) < _min_leaf(b):
        return sa * sb, (a, b)
    return -sa * sb, (b, a)


def _jacobi_instances(expr):
    """Each way of rewriting the expression across one internal edge.

    Yields tuples ((e1, s1), (e2, s2)) with expr == s1*e1 + s2*e2 in any
    Lie algebra; one instance per edge between an internal vertex and an
    internal child, which is one per internal edge of the unrooted tree.
    """
    out = []
    if is_leaf(expr):
        return out
    a, b = expr
    if not is_leaf(a):
        c, d = a
        out.append(((((c, b), d), 1), ((c, (d, b)), 1)))
    if not is_leaf(b):
        c, d = b
        out.append(((((a, c), d), 1), (((a, d), c), -1)))
    for inst in _jacobi_instances(a):
        out.append(tuple(((e, b), s) for e, s in inst))
    for inst in _jacobi_instances(b):
        out.append(tuple(((a, e), s) for e, s in inst))
    return out


@dataclass
class TreeGroup:
    """Presentation of the order-m group.

    generators are rooted expressions over labels 1..m+1 (the omitted root
    leaf is m+2).  In the reduced presentation the generators are the
    antisymmetry-normal shapes and the relations are the Jacobi rows with
    rewritten terms normalized back; in the unreduced presentation every
    child order is its own generator and the antisymmetry rows appear
    explicitly.  rank and torsion come from the Smith form of the relation
    matrix.
    """

    m: int
    generators: list
    relations: list
    rank: int
    torsion: list


def tree_group(m, size_guard=5000, reduced=True):
    """Generators-and-relations presentation of the order-m tree group."""
    if m < 1:
        raise InvalidComplexError("tree groups start at order one")
    count = 1
    for i in range(3, 2 * m, 2):
        count *= i
    if not reduced:
        count *= 2 ** m
    if count > size_guard:
        raise SizeGuardError(
            f"{count} generators exceed the guard {size_guard}",
            requested=count, guard=size_guard)
    labels = tuple(range(1, m + 2))
    if reduced:
        gens = sorted(_shapes(labels), key=_tree_key)
    else:
        gens = sorted((o for s in _shapes(labels) for o in _orientations(s)),
                      key=_tree_key)
    idx = {g: i for i, g in enumerate(gens)}
    rows = []
    for g in gens:
        for inst in _jacobi_instances(g):
            row = {idx[g]: 1}
            for e, s in inst:
                if reduced:
                    se, ce = canon_expr(e)
                else:
                    se, ce = 1, e
                add_into(row, idx[ce], -s * se)
            if row:
                rows.append(row)
    if not reduced:
        for g in gens:
            for flipped in _flips(g):
                rows.append(_as_row(idx, g, flipped))
    entries = {}
    for i, row in enumerate(rows):
        for j, v in row.items():
            entries[(i, j)] = v
    res = snf(entries, len(rows), len(gens), track_u=False, track_v=False)
    return TreeGroup(m=m, generators=gens, relations=rows,
                     rank=len(gens) - res.rank, torsion=res.torsion())


def _flips(expr):
    """The expressions obtained by swapping the children of one vertex."""
    if is_leaf(expr):
        return
    a, b = expr
    yield (b, a)
    for fa in _flips(a):
        yield (fa, b)
    for fb in _flips(b):
        yield (a, fb)


def _as_row(idx, g, flipped):
    row = {idx[g]: 1}
    add_into(row, idx[flipped], 1)
    return row


def generator_tree(tg, i):
    """The i-th generator as a whole tree, root leaf restored."""
    return (tg.generators[i], tg.m + 2)
