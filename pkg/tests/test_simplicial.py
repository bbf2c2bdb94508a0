"""Complex construction, boundary arithmetic, and tagged cycles."""

import pytest

from obstructa import catalog
from obstructa.chains import combine, diff, is_zero, pair, scale
from obstructa.errors import InvalidComplexError
from obstructa.simplicial import (SimplicialComplex, boundary, boundary_chain,
                                  faces, tagged_cycle)


def test_boundary_of_triangle():
    assert boundary((0, 1, 2)) == {(1, 2): 1, (0, 2): -1, (0, 1): 1}


def test_boundary_of_edge_and_vertex():
    assert boundary((3, 7)) == {(7,): 1, (3,): -1}
    assert boundary((5,)) == {}


def test_faces_every_nonempty_subset():
    fs = faces((0, 1, 2))
    assert set(fs) == {(0,), (1,), (2,), (0, 1), (0, 2), (1, 2), (0, 1, 2)}
    assert len(fs) == 7


def test_boundary_squared_vanishes_on_simplices():
    for s in [(0, 1), (0, 1, 2), (0, 1, 2, 3), (2, 5, 7, 11, 13)]:
        assert boundary_chain(boundary(s)) == {}


def test_rejects_unsorted_and_repeated_vertices():
    with pytest.raises(InvalidComplexError):
        SimplicialComplex([(1, 0, 2)])
    with pytest.raises(InvalidComplexError):
        SimplicialComplex([(0, 1, 1)])


def test_closed_under_faces_and_census():
    c = SimplicialComplex([(0, 1, 2), (2, 3)])
    assert c.census() == {0: 4, 1: 4, 2: 1}
    assert (0, 2) in c
    assert (0, 3) not in c
    c.validate()


def test_builtin_censuses():
    expected = {
        "sk2_delta6": {0: 7, 1: 21, 2: 35},
        "g7": {0: 7, 1: 21, 2: 34},
        "k5": {0: 5, 1: 10},
        "k0_fkt": {0: 13, 1: 42, 2: 70},
        "k_fkt": {0: 26, 1: 90, 2: 106},
        "k_fkt_sst": {0: 26, 1: 66, 2: 44},
        "disjoint_sphere_sphere_torus": {0: 24, 1: 60, 2: 40},
        "three_triangles": {0: 9, 1: 9, 2: 3},
        "four_triangles": {0: 12, 1: 12, 2: 4},
    }
    for name, census in expected.items():
        c = catalog.get(name)
        c.validate()
        assert c.census() == census, name


def test_unknown_builtin():
    with pytest.raises(InvalidComplexError):
        catalog.get("nope")


def test_boundary_matrix_composes_to_zero():
    c = catalog.get("g7")
    d2 = c.boundary_matrix(2)
    d1 = c.boundary_matrix(1)
    assert len({j for (_, j) in d2}) == 34
    assert len({j for (_, j) in d1}) == 21
    # compose sparsely
    comp = {}
    for (i, j), v in d2.items():
        for (r, ii), w in d1.items():
            if ii == i:
                comp[(r, j)] = comp.get((r, j), 0) + w * v
    assert all(v == 0 for v in comp.values())


def test_tagged_cycle_sphere_is_closed(dsst):
    z = tagged_cycle(dsst, "S", 2)
    assert sorted(z) == [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)]
    assert all(v in (1, -1) for v in z.values())
    assert z[(0, 1, 2)] == 1
    assert boundary_chain(z) == {}


def test_tagged_cycle_loop_is_closed(dsst):
    for tag in ("loop_a", "loop_b"):
        z = tagged_cycle(dsst, tag, 1)
        assert len(z) == 4
        assert boundary_chain(z) == {}


def test_tagged_cycle_torus_is_closed(dsst):
    z = tagged_cycle(dsst, "T", 2)
    assert len(z) == 32
    assert boundary_chain(z) == {}


def test_tagged_cycle_missing_tag(dsst):
    with pytest.raises(InvalidComplexError):
        tagged_cycle(dsst, "no_such_tag", 2)


def test_fkt_tagged_cycles_are_closed(k_fkt, k_fkt_sst):
    for c in (k_fkt, k_fkt_sst):
        for tag, d in (("S", 2), ("Sp", 2), ("T", 2),
                       ("loop_a", 1), ("loop_b", 1)):
            assert boundary_chain(tagged_cycle(c, tag, d)) == {}, (c.name, tag)


def test_json_round_trip(dsst):
    text = dsst.dumps()
    back = SimplicialComplex.loads(text)
    assert back.maximal_simplices() == dsst.maximal_simplices()
    assert back.tags == dsst.tags
    assert back.dumps() == text


def test_loads_rejects_garbage():
    with pytest.raises(InvalidComplexError):
        SimplicialComplex.loads("not json")
    with pytest.raises(InvalidComplexError):
        SimplicialComplex.loads("{}")


def test_chain_helpers():
    a = {(0, 1): 2, (1, 2): -1}
    b = {(0, 1): -2, (2, 3): 5}
    assert combine(a, b) == {(1, 2): -1, (2, 3): 5}
    assert scale(a, 3) == {(0, 1): 6, (1, 2): -3}
    assert scale(a, 0) == {}
    assert diff(a, a) == {}
    assert is_zero({})
    assert not is_zero(a)
    assert pair(a, {(0, 1): 1, (1, 2): 1}) == 1
