"""Exact rational geometry: determinants, linear solving, moment-curve maps,
intersection signs, and two independent linking-number routes."""

from fractions import Fraction as F
from importlib import resources

import pytest

from obstructa import catalog
from obstructa.errors import DegenerateGeometryError, InvalidComplexError
from obstructa.plgeom import (PLMap, det, direction_from_json,
                              gauss_linking_2_1, intersection_sign,
                              linking_number, moment_curve_map, plmap_from_file,
                              rref_solve, validate_almost_embedding)
from obstructa.simplicial import tagged_cycle


def seg(*pts):
    return [tuple(F(x) for x in p) for p in pts]


def asset_map(name):
    p = resources.files("obstructa").joinpath("assets", name + ".json")
    pm, _ = plmap_from_file(str(p))
    return pm


# -- linear algebra over Q ---------------------------------------------------

def test_det_oracles():
    assert det([[F(1), F(2)], [F(3), F(4)]]) == -2
    assert det([[F(1), F(0)], [F(0), F(1)]]) == 1
    assert det([[F(2)]]) == 2


def test_rref_solve_kinds():
    kind, x, _ = rref_solve([[F(1), F(0)], [F(0), F(1)]], [F(2), F(3)])
    assert kind == "unique" and x == [2, 3]
    kind, x, basis = rref_solve([[F(1), F(1)]], [F(2)])
    assert kind == "many" and len(basis) == 1
    assert x[0] + x[1] == 2
    kind, _, _ = rref_solve([[F(1)], [F(1)]], [F(1), F(2)])
    assert kind == "none"


# -- maps --------------------------------------------------------------------

def test_moment_curve_map_powers():
    tt = catalog.get("three_triangles")
    pm = moment_curve_map(tt, 4, params=list(range(1, 10)))
    assert pm.ambient == 4
    assert pm.covers(tt)
    assert pm.point(2) == (3, 9, 27, 81)


def test_moment_curve_default_params():
    k5 = catalog.get("k5")
    pm = moment_curve_map(k5, 2)
    assert pm.point(0) == (1, 1)
    assert pm.point(4) == (5, 25)


def test_plmap_json_round_trip():
    k5 = catalog.get("k5")
    pm = moment_curve_map(k5, 2)
    back = PLMap.from_json(pm.to_json())
    assert back.ambient == pm.ambient
    assert all(back.point(v) == pm.point(v) for v in range(5))


def test_direction_from_json():
    assert direction_from_json({}) == (0, 0, 0, 1)
    assert direction_from_json({"direction": ["1", "0", "0", "2"]}) \
        == (1, 0, 0, 2)


# -- intersection signs ------------------------------------------------------

def test_crossing_segments_in_the_plane():
    pa = seg((0, 0), (2, 2))
    pb = seg((0, 2), (2, 0))
    assert intersection_sign(pa, pb) == -1
    # swapping two odd-dimensional factors flips the sign
    assert intersection_sign(pb, pa) == 1


def test_disjoint_segments_do_not_count():
    assert intersection_sign(seg((0, 0), (1, 0)), seg((0, 2), (1, 2))) == 0


def test_triangle_segment_in_three_space():
    tri = seg((0, 0, 0), (3, 0, 0), (0, 3, 0))
    sg = seg((1, 1, -1), (1, 1, 1))
    assert intersection_sign(tri, sg) == 1
    # even-by-odd swap keeps the sign
    assert intersection_sign(sg, tri) == 1
    assert intersection_sign(tri, seg((5, 5, -1), (5, 5, 1))) == 0


def test_touching_boundary_is_degenerate():
    tri = seg((0, 0, 0), (3, 0, 0), (0, 3, 0))
    through_edge = seg((1, 0, -1), (1, 0, 1))
    with pytest.raises(DegenerateGeometryError):
        intersection_sign(tri, through_edge)


# -- almost-embedding validation --------------------------------------------

def test_k5_in_the_plane_always_self_meets():
    k5 = catalog.get("k5")
    bad = validate_almost_embedding(k5, moment_curve_map(k5, 2))
    assert len(bad) == 5
    assert ((0, 2), (1, 3)) in bad


def test_moment_map_on_g7_has_double_points():
    # general position, not an almost-embedding: disjoint triangle pairs meet
    g7 = catalog.get("g7")
    bad = validate_almost_embedding(g7, moment_curve_map(g7, 4))
    assert len(bad) == 7
    assert all(len(a) == 3 and len(b) == 3 for a, b in bad)


def test_stock_map_is_an_almost_embedding(dsst):
    pm = asset_map("dsst_stock")
    assert pm.covers(dsst)
    assert validate_almost_embedding(dsst, pm) == []


def test_far_map_is_an_almost_embedding(dsst):
    pm = asset_map("dsst_far")
    assert validate_almost_embedding(dsst, pm) == []


# -- linking numbers, two routes --------------------------------------------

def test_stock_map_linking_numbers_both_routes(dsst):
    pm = asset_map("dsst_stock")
    expected = {("S", "loop_a"): -1, ("S", "loop_b"): 0,
                ("Sp", "loop_a"): 0, ("Sp", "loop_b"): 0}
    direction = ("0", "0", "0", "1")
    for (s, l), want in expected.items():
        z2 = tagged_cycle(dsst, s, 2)
        z1 = tagged_cycle(dsst, l, 1)
        got = gauss_linking_2_1(pm, z2, z1, direction)
        assert got == want, (s, l)
        assert linking_number(pm, z2, z1) == want, (s, l)


def test_far_map_links_nothing(dsst):
    pm = asset_map("dsst_far")
    direction = ("0", "0", "0", "1")
    for s in ("S", "Sp"):
        z2 = tagged_cycle(dsst, s, 2)
        for l in ("loop_a", "loop_b"):
            z1 = tagged_cycle(dsst, l, 1)
            assert gauss_linking_2_1(pm, z2, z1, direction) == 0
            assert linking_number(pm, z2, z1) == 0


def test_gauss_linking_rejects_bad_direction(dsst):
    pm = asset_map("dsst_stock")
    z2 = tagged_cycle(dsst, "S", 2)
    z1 = tagged_cycle(dsst, "loop_a", 1)
    with pytest.raises(InvalidComplexError):
        gauss_linking_2_1(pm, z2, z1, ("0", "0", "0"))
    with pytest.raises(InvalidComplexError):
        gauss_linking_2_1(pm, z2, z1, ("0", "0", "0", "0"))
