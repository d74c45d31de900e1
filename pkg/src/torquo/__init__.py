"""Exact fan computations for toric quasi-projective reductions and subtorus quotients."""
from .cone import Cone, NotContainedError
from .concave import (
    FamilyCone,
    LinearFormFamily,
    common_refinement,
    family_cone,
    generic_refinement,
    indecomposable_sets,
    is_concave,
    is_strictly_concave,
    normal_quasifan,
    sum_family,
)
from .errors import InternalContradiction, InvalidQuasiFanError, NotAMapError, TorquoError
from .exactlin import DimensionError, SublatticeBasis
from .fan import (
    LatticeMap,
    QuasiFan,
    all_faces,
    compose,
    image_cones,
    is_affine_map,
    is_complete,
    is_fan,
    is_map,
    is_surjective,
    missing_cones,
    quotient_fan,
    rays,
    validate,
)
from .reduction import (
    QuotientVerdict,
    ReductionResult,
    has_qp_reduction,
    is_quasiprojective,
    quotient_existence,
    reduce,
)

__version__ = "0.1.0"
