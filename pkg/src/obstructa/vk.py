"""Double-point obstruction for maps of an m-complex into 2m-space.

The cochain o_f assigns to every ordered pair of vertex-disjoint m-simplices
the signed intersection number of their images under a generic PL map.  Its
class in the swap-equivariant cohomology of the two-fold deleted product
vanishes exactly when some map has no double points on disjoint simplices.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidComplexError
from .plgeom import intersection_sign, moment_curve_map
from .products import DeletedProduct
from .zlinalg import EquivariantComplex, class_status
from .chains import diff


@dataclass
class VkCocycle:
    """Top-degree equivariant cochain of signed double points.

    values holds one integer per orbit representative (2m)-cell; the full
    cellular cochain is eq.unfold(2 * m, values).
    """

    dp: DeletedProduct
    plmap: object
    eq: EquivariantComplex
    values: dict
    m: int


def _map_for(complex_, plmap, params):
    m = complex_.dim
    if plmap is None:
        plmap = moment_curve_map(complex_, 2 * m, params)
    elif params is not None:
        raise InvalidComplexError("pass either a map or parameters, not both")
    if plmap.ambient != 2 * m:
        raise InvalidComplexError(
            f"map lands in dimension {plmap.ambient}, expected {2 * m}")
    return plmap


def vk_cocycle(complex_, plmap=None, params=None, size_guard=None, dp=None, eq=None):
    """Assemble o_f on the two-fold deleted product, verified equivariant.

    With no map given, vertices go to the moment curve in 2m-space with
    parameters 1, 2, 3, ... (or the supplied ones).  A prebuilt deleted
    product and its equivariant complex can be reused across maps.
    """
    m = complex_.dim
    plmap = _map_for(complex_, plmap, params)
    if dp is None:
        kw = {"degrees": (2 * m - 1, 2 * m)}
        if size_guard is not None:
            kw["size_guard"] = size_guard
        dp = DeletedProduct(complex_, 2, **kw)
    if eq is None:
        # character (-1)^d; the factor-swap Koszul sign (-1)^(m*m) sits in
        # the action, matched by the swap parity of intersection signs
        eq = EquivariantComplex(dp, "sign_d", char_degree=2 * m)
    cochain = {}
    for cell in dp.cells_of_dim(2 * m):
        s = intersection_sign(plmap.simplex_points(cell[0]),
                              plmap.simplex_points(cell[1]))
        if s:
            cochain[cell] = s
    values = eq.fold(2 * m, cochain, check=True)
    return VkCocycle(dp=dp, plmap=plmap, eq=eq, values=values, m=m)


def vk_class(vc, cycles=()):
    """Certificate for the class of o_f: a primitive when it is a coboundary,
    an exact infeasibility witness (or a pairing cycle) when it is not."""
    return class_status(vc.eq, 2 * vc.m, vc.values, cycles=cycles)


def vk_class_stability(complex_, params1, params2, size_guard=None):
    """Whether two generic moment-curve maps give cohomologous cochains.

    Always true for honest inputs; exercised as a consistency check.  The
    difference cochain is certified as an equivariant coboundary.
    """
    m = complex_.dim
    kw = {"degrees": (2 * m - 1, 2 * m)}
    if size_guard is not None:
        kw["size_guard"] = size_guard
    dp = DeletedProduct(complex_, 2, **kw)
    eq = EquivariantComplex(dp, "sign_d", char_degree=2 * m)
    a = vk_cocycle(complex_, params=params1, dp=dp, eq=eq)
    b = vk_cocycle(complex_, params=params2, dp=dp, eq=eq)
    cert = class_status(eq, 2 * m, diff(a.values, b.values))
    return cert.kind == "zero_with_primitive"
