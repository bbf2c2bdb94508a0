"""Triple-product cochains on the four-fold deleted product of four
disjoint triangles.  The input pair cochain has closed edge weights around
each triangle, chosen so front-face against back-face contractions survive;
one-sided weights are kept as a regression for the degenerate case."""

import pytest

from obstructa.errors import CertificateError, InvalidComplexError
from obstructa.o3 import massey_y4
from obstructa.products import DeletedProduct, cell_boundary

from conftest import _tri_edges, massey_u

TRIPLES = [(1, 2, 3), (2, 3, 4), (3, 4, 1), (4, 1, 2)]


@pytest.fixture(scope="module")
def dp4(four_triangles):
    return DeletedProduct(four_triangles, 4)


@pytest.fixture(scope="module")
def ys(four_triangles, dp4):
    return massey_y4(dp4, u_cell=massey_u(four_triangles))


def one_sided_u(complex_):
    u = {}
    tris = complex_.simplices_of_dim(2)
    for first in tris:
        for second in tris:
            if first == second:
                continue
            ab, ac, _ = _tri_edges(second)
            u[(first, ab)] = 1
            u[(first, ac)] = 1
    return u


def test_three_cochains_cover_every_top_cell(dp4, ys):
    y1, y2, y3 = ys
    top = set(dp4.cells_of_dim(8))
    assert len(top) == 24
    for y in (y1, y2, y3):
        assert set(y) == top
    assert set(y1.values()) == {6}
    assert set(y2.values()) == {-3}
    assert set(y3.values()) == {-3}


def test_sum_vanishes_entry_by_entry(dp4, ys):
    y1, y2, y3 = ys
    for cell in dp4.cells_of_dim(8):
        assert y1.get(cell, 0) + y2.get(cell, 0) + y3.get(cell, 0) == 0


def test_reruns_are_identical(four_triangles, dp4, ys):
    assert massey_y4(dp4, u_cell=massey_u(four_triangles)) == ys


def test_one_sided_weights_give_zero_products(four_triangles, dp4):
    # without back-edge weight the shared slot cannot glue; every cup dies
    ys = massey_y4(dp4, u_cell=one_sided_u(four_triangles))
    assert ys == ({}, {}, {})


def test_supplied_primitives_are_verified(four_triangles, dp4):
    u1 = one_sided_u(four_triangles)
    ok = {t: {} for t in TRIPLES}
    assert massey_y4(dp4, u_cell=u1, xs=ok) == ({}, {}, {})
    cell6 = dp4.cells_of_dim(6)[0]
    face5 = next(iter(cell_boundary(cell6)))
    bad = {t: {} for t in TRIPLES}
    bad[(1, 2, 3)] = {face5: 1}
    with pytest.raises(CertificateError):
        massey_y4(dp4, u_cell=u1, xs=bad)


def test_requires_a_four_fold_product(four_triangles):
    dp3 = DeletedProduct(four_triangles, 3)
    with pytest.raises(InvalidComplexError):
        massey_y4(dp3, u_cell={})


def test_requires_some_input(dp4):
    with pytest.raises(InvalidComplexError):
        massey_y4(dp4)
