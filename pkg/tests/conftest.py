"""Shared fixtures: built-in complexes, their deleted products, and small
input data used across several test modules.  Session scope where the build
is not free; everything here is deterministic."""

import json

import pytest

from obstructa import catalog
from obstructa.products import DeletedProduct
from obstructa.whitney import WhitneyDatum
from obstructa.zlinalg import EquivariantComplex


@pytest.fixture(scope="session")
def dsst():
    return catalog.get("disjoint_sphere_sphere_torus")


@pytest.fixture(scope="session")
def dsst_dp3(dsst):
    dp = DeletedProduct(dsst, 3, degrees=(5, 6))
    eq = EquivariantComplex(dp, "sign")
    return dp, eq


@pytest.fixture(scope="session")
def k_fkt():
    return catalog.get("k_fkt")


@pytest.fixture(scope="session")
def k_fkt_sst():
    return catalog.get("k_fkt_sst")


@pytest.fixture(scope="session")
def four_triangles():
    return catalog.get("four_triangles")


@pytest.fixture(scope="session")
def dsst_datum(dsst):
    """One Whitney disk between the two sphere triangles (0,1,2) and
    (4,5,6), meeting one torus triangle once."""
    tris = dsst.simplices_of_dim(2)
    i = tris.index((0, 1, 2))
    j = tris.index((4, 5, 6))
    k = tris.index((8, 9, 13))
    obj = {"pairs": [{"cells": [i, j],
                      "points": [{"sign": 1, "disk": 0},
                                 {"sign": -1, "disk": 0}],
                      "disks": [{"meets": {str(k): 1}}]}]}
    return WhitneyDatum.from_json(dsst, obj)


def _tri_edges(t):
    a, b, c = t
    return (a, b), (a, c), (b, c)


def massey_u(complex_):
    """Closed pair cochain on disjoint (triangle, edge) and (edge, triangle)
    cells.  The edge weights around each triangle sum to a cycle dual, and
    the two weight patterns share the middle edge, so front-face against
    back-face contractions in triple products survive.
    """
    psi = (1, 1, 0)
    phi = (0, 1, 1)
    tris = complex_.simplices_of_dim(2)
    u = {}
    for first in tris:
        for second in tris:
            if first == second or set(first) & set(second):
                continue
            edges = _tri_edges(second)
            for w, e in zip(psi, edges):
                if w:
                    u[(first, e)] = w
            for w, e in zip(phi, edges):
                if w:
                    u[(e, first)] = w
    return u


STOCK_LINKING = {("S", "loop_b"): 1, ("Sp", "loop_a"): 1}
RICH_LINKING = {("S", "loop_a"): 2, ("S", "loop_b"): 3,
                ("Sp", "loop_a"): 5, ("Sp", "loop_b"): 7}


def write_json(path, obj):
    path.write_text(json.dumps(obj))
    return str(path)
