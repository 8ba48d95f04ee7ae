"""Exact geometry-of-numbers toolkit: lattice-point counts in ellipsoids, successive
minima, and machine-checked lattice-point bounds for ellipsoids."""

from .bhw import (
    BhwReport,
    QValues,
    body_minima,
    check_minkowski_second,
    q_from_lambda_sq,
    q_values,
    verify_first_theorem,
    verify_theorem1,
)
from .core import (
    Ball,
    FlagBasis,
    InnerProductSpace,
    Lattice,
    contains,
    difference_body,
    gram,
    half_difference_body,
    norm_sq,
)
from .enumeration import (
    INFINITE,
    LdltDecomposition,
    MinimaProfile,
    closest_vectors,
    count_ball,
    enumerate_ball,
    ldlt,
    oracle_count,
    successive_minima,
)
from .errors import CapacityError, HypothesisViolation, InvalidInputError, LatticeError, VerificationFailure
from .reduction import UnimodularTransform, ellipsoid_to_ball_form, extend_to_flag_basis, hnf, lll_reduce
from .slicing import StrongInstance, check_C1, check_C2, slice_ball, verify_strong, verify_theorem1_via_strong
from .translation import (
    SpherePack,
    TranslationResult,
    certify_all_t,
    coset_distance_sq,
    translate_spheres,
    verify_translation,
)

__version__ = "0.1.0"

__all__ = [
    "Ball",
    "BhwReport",
    "CapacityError",
    "FlagBasis",
    "HypothesisViolation",
    "INFINITE",
    "InnerProductSpace",
    "InvalidInputError",
    "Lattice",
    "LatticeError",
    "LdltDecomposition",
    "MinimaProfile",
    "QValues",
    "SpherePack",
    "StrongInstance",
    "TranslationResult",
    "UnimodularTransform",
    "VerificationFailure",
    "body_minima",
    "certify_all_t",
    "check_C1",
    "check_C2",
    "check_minkowski_second",
    "closest_vectors",
    "contains",
    "coset_distance_sq",
    "count_ball",
    "difference_body",
    "ellipsoid_to_ball_form",
    "enumerate_ball",
    "extend_to_flag_basis",
    "gram",
    "half_difference_body",
    "hnf",
    "ldlt",
    "lll_reduce",
    "norm_sq",
    "oracle_count",
    "q_from_lambda_sq",
    "q_values",
    "slice_ball",
    "successive_minima",
    "translate_spheres",
    "verify_first_theorem",
    "verify_strong",
    "verify_theorem1",
    "verify_theorem1_via_strong",
    "verify_translation",
]
