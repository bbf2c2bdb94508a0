"""Built-in simplicial complexes used throughout the test corpus and CLI.

Each builder returns a fresh SimplicialComplex.  Several carry tags naming
distinguished subcomplexes (spheres, surfaces, loops) that downstream
computations turn into fundamental cycles.
"""

from __future__ import annotations

import itertools

from .errors import InvalidComplexError
from .simplicial import SimplicialComplex


def sk2_delta6():
    """2-skeleton of the 6-simplex: all triangles on 7 vertices."""
    tris = [t for t in itertools.combinations(range(7), 3)]
    return SimplicialComplex(tris, name="sk2_delta6")


def g7():
    """2-skeleton of the 6-simplex with the triangle {0,1,2} removed."""
    tris = [t for t in itertools.combinations(range(7), 3) if t != (0, 1, 2)]
    return SimplicialComplex(tris, name="g7")


def k5():
    """Complete graph on 5 vertices."""
    edges = [e for e in itertools.combinations(range(5), 2)]
    return SimplicialComplex(edges, name="k5")


def _wedge_triangles():
    """Two copies of the full triangle 2-skeleton on 7 vertices, wedged at
    vertex 0.  Copy one uses vertices 0..6, copy two uses 0 and 7..12."""
    copy1 = [t for t in itertools.combinations(range(7), 3)]
    second = [0] + list(range(7, 13))
    copy2 = [tuple(sorted(c)) for c in itertools.combinations(second, 3)]
    return copy1 + copy2


def _wedge_tags():
    return {
        "S": [t for t in itertools.combinations((3, 4, 5, 6), 3)],
        "Sp": [t for t in itertools.combinations((9, 10, 11, 12), 3)],
        "loop_a": [(0, 1), (1, 2), (0, 2)],
        "loop_b": [(0, 7), (7, 8), (0, 8)],
    }


def k0_fkt():
    """Wedge of two triangle-complete 7-vertex 2-complexes at vertex 0.

    Tags: S and Sp are boundary-tetrahedron spheres, one in each copy;
    loop_a and loop_b are triangle loops through the wedge point, one in
    each copy.
    """
    return SimplicialComplex(_wedge_triangles(), name="k0_fkt",
                             tags=_wedge_tags())


# Boundary word of the commutator disk: loop_a, loop_b, loop_a reversed,
# loop_b reversed, read as a 12-gon of existing wedge vertices.
_COMMUTATOR_WORD = (0, 1, 2, 0, 7, 8, 0, 2, 1, 0, 8, 7)


def _commutator_disk():
    """Triangulated disk attached along the commutator of the two wedge
    loops: a 12-gon on the word vertices, an annulus to a fresh inner ring
    13..24, and a cone over the ring with apex 25."""
    ring = list(range(13, 25))
    tris = []
    for i in range(12):
        b0 = _COMMUTATOR_WORD[i]
        b1 = _COMMUTATOR_WORD[(i + 1) % 12]
        r0 = ring[i]
        r1 = ring[(i + 1) % 12]
        tris.append(tuple(sorted((b0, b1, r0))))
        tris.append(tuple(sorted((b1, r1, r0))))
    for i in range(12):
        tris.append(tuple(sorted((ring[i], ring[(i + 1) % 12], 25))))
    return tris


def k_fkt():
    """The wedge of k0_fkt with a disk attached along the commutator of its
    two loops.  The attached surface is tagged T; its coherent orientation
    sums to a 2-cycle because the boundary word cancels edge by edge.
    """
    disk = _commutator_disk()
    tags = _wedge_tags()
    tags["T"] = sorted(disk)
    return SimplicialComplex(_wedge_triangles() + disk, name="k_fkt", tags=tags)


def k_fkt_sst():
    """Subcomplex of k_fkt spanned by the tagged spheres and the attached
    surface.

    Inside the full complex both loops bound triangles, so no edge cochain
    is dual to them; here the attached surface is the only 2-dimensional
    material around the loops and dual cochains exist, which lets the whole
    cochain pipeline run on a complex a fraction of the size.
    """
    disk = _commutator_disk()
    base = _wedge_tags()
    tags = {"S": base["S"], "Sp": base["Sp"], "T": sorted(disk),
            "loop_a": base["loop_a"], "loop_b": base["loop_b"]}
    return SimplicialComplex(tags["S"] + tags["Sp"] + disk, name="k_fkt_sst",
                             tags=tags)


def three_triangles():
    """Three pairwise disjoint triangles."""
    tris = [(0, 1, 2), (3, 4, 5), (6, 7, 8)]
    return SimplicialComplex(tris, name="three_triangles")


def four_triangles():
    """Four pairwise disjoint triangles."""
    tris = [(0, 1, 2), (3, 4, 5), (6, 7, 8), (9, 10, 11)]
    return SimplicialComplex(tris, name="four_triangles")


def _grid_vertex(i, j):
    return 8 + 4 * (i % 4) + (j % 4)


def disjoint_sphere_sphere_torus():
    """Two boundary-tetrahedron spheres and a 4x4 grid torus, all disjoint.

    Vertices 0..3 and 4..7 are the spheres (tags S, Sp); vertices 8..23 form
    the torus (tag T) with each grid square split into two triangles.
    loop_a is the j=0 row loop, loop_b the i=0 column loop.
    """
    tris = [t for t in itertools.combinations(range(4), 3)]
    tris += [tuple(sorted(t)) for t in itertools.combinations(range(4, 8), 3)]
    torus = []
    for i in range(4):
        for j in range(4):
            a = _grid_vertex(i, j)
            b = _grid_vertex(i + 1, j)
            c = _grid_vertex(i + 1, j + 1)
            d = _grid_vertex(i, j + 1)
            torus.append(tuple(sorted((a, b, c))))
            torus.append(tuple(sorted((a, c, d))))
    tags = {
        "S": [t for t in itertools.combinations(range(4), 3)],
        "Sp": [tuple(sorted(t)) for t in itertools.combinations(range(4, 8), 3)],
        "T": sorted(torus),
        "loop_a": [tuple(sorted((_grid_vertex(i, 0), _grid_vertex(i + 1, 0))))
                   for i in range(4)],
        "loop_b": [tuple(sorted((_grid_vertex(0, j), _grid_vertex(0, j + 1))))
                   for j in range(4)],
    }
    return SimplicialComplex(tris + torus, name="disjoint_sphere_sphere_torus",
                             tags=tags)


BUILTINS = {
    "sk2_delta6": sk2_delta6,
    "g7": g7,
    "k5": k5,
    "k0_fkt": k0_fkt,
    "k_fkt": k_fkt,
    "k_fkt_sst": k_fkt_sst,
    "three_triangles": three_triangles,
    "four_triangles": four_triangles,
    "disjoint_sphere_sphere_torus": disjoint_sphere_sphere_torus,
}


def names():
    return sorted(BUILTINS)


def get(name):
    try:
        return BUILTINS[name]()
    except KeyError:
        raise InvalidComplexError(
            f"unknown builtin complex {name!r}; available: {', '.join(names())}"
        ) from None
