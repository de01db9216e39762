"""Exact Fine interiors of rational polytopes and their dilations."""

from .canonical import CanonicalRaySet, canonical_rays, hilbert_basis_simplicial
from .classify import (
    ClassificationRecord,
    DedupStore,
    bipyramid_census,
    classify_polygons,
    classify_sporadic,
    classify_weakly_sporadic_all,
    classify_weakly_sporadic_width1,
    classify_weakly_sporadic_width2,
    is_sporadic,
    minkowski_summand_pairs,
    projects_to_2delta2,
    reflexive_polygons,
    subpolytope_classes,
)
from .ehrhart import HStar, ehrhart_count, hstar
from .fine import (
    FineResult,
    GorensteinData,
    MultiplierProfile,
    canonical_hull,
    fine_interior,
    fine_interior_bruteforce,
    fine_of_dilation,
    gorenstein_data,
    is_canonically_closed,
    is_f_hollow,
    is_support_vector,
    is_weakly_sporadic,
    mu_of_support_vector,
    multiplier_profile,
    reflexive_check,
)
from .linalg import Rational, hermite_normal_form, primitive_vector, solve_square
from .normal_form import NormalForm, affine_normal_form, are_equivalent
from .polytope import (
    HalfSpace,
    HPolyhedron,
    InvariantViolation,
    LatticeCone,
    Polytope,
    cone_over,
    convex_hull,
    dilate,
    facets,
    lattice_points,
    min_support,
    minkowski_sum,
    pyramid,
    resolve_hpolyhedron,
    slice_polytope,
)
from .width import WidthCertificate, inscribed_box_radius, lattice_width

__version__ = "0.1.0"
