"""Exact integer cochain computations on simplicial deleted products.

Certified embedding obstructions: the classical double-point class, a
third-order class from linking data, Whitney-tower tree invariants and
triple-product cocycles, all over the integers with re-checkable
certificates.
"""

__version__ = "0.1.0"

from .errors import (
    ObstructaError,
    InvalidComplexError,
    SizeGuardError,
    DegenerateGeometryError,
    CertificateError,
)
from .simplicial import SimplicialComplex, tagged_cycle
from .products import DeletedProduct
from .zlinalg import (
    snf,
    solve_integer,
    solve_with_witness,
    EquivariantComplex,
    Certificate,
    class_status,
    equivariant_cohomology,
)
from .plgeom import PLMap, moment_curve_map, linking_number, gauss_linking_2_1
from .vk import vk_cocycle, vk_class, vk_class_stability
from .o3 import (
    GaussCocycle,
    gauss_cocycle,
    synthetic_cocycle,
    linking_form_from_json,
    ArnoldPullback,
    arnold_pullback,
    product_cycle,
    pair_linking_values,
    kunneth_pairing,
    o3_certificate,
    cocycle_class_certificate,
    equivariant_class_group,
    massey_y4,
)
from .trees import (
    TreeGroupElement,
    reduce_tree,
    combine_trees,
    relabel_element,
    tree_group,
    TreeGroup,
)
from .whitney import (
    WhitneyDatum,
    w3_cocycle,
    w3_class,
    stabilize,
    split_disk,
    elementary_coboundary,
    TowerDatum,
    tau,
    wn_cochain,
    towers_from_whitney,
)
from .reports import RunConfig, Report, run_pipeline, verify_certificate
from . import catalog

__all__ = [
    "ObstructaError",
    "InvalidComplexError",
    "SizeGuardError",
    "DegenerateGeometryError",
    "CertificateError",
    "SimplicialComplex",
    "tagged_cycle",
    "DeletedProduct",
    "snf",
    "solve_integer",
    "solve_with_witness",
    "EquivariantComplex",
    "Certificate",
    "class_status",
    "equivariant_cohomology",
    "PLMap",
    "moment_curve_map",
    "linking_number",
    "gauss_linking_2_1",
    "vk_cocycle",
    "vk_class",
    "vk_class_stability",
    "GaussCocycle",
    "gauss_cocycle",
    "synthetic_cocycle",
    "linking_form_from_json",
    "ArnoldPullback",
    "arnold_pullback",
    "product_cycle",
    "pair_linking_values",
    "kunneth_pairing",
    "o3_certificate",
    "cocycle_class_certificate",
    "equivariant_class_group",
    "massey_y4",
    "TreeGroupElement",
    "reduce_tree",
    "combine_trees",
    "relabel_element",
    "tree_group",
    "TreeGroup",
    "WhitneyDatum",
    "w3_cocycle",
    "w3_class",
    "stabilize",
    "split_disk",
    "elementary_coboundary",
    "TowerDatum",
    "tau",
    "wn_cochain",
    "towers_from_whitney",
    "RunConfig",
    "Report",
    "run_pipeline",
    "verify_certificate",
    "catalog",
    "__version__",
]
