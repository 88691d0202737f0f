"""Projective primitives, curve models, the Halphen map and branches."""
from .branch import (
    Branch,
    BranchType,
    NormalizationRecord,
    apply_linear,
    branch_at_parameter,
    branches_of_rational_curve,
    normalize_branch,
    preimages,
    reparametrize,
)
from .curves import (
    CompleteIntersection,
    HalphenImage,
    RationalCurve,
    halphen_map,
    halphen_rational,
    halphen_via_tangent,
    lambda_from_theta,
    plucker_lambda,
    plucker_theta,
    polar_surface,
    tangent_direction,
    tangent_map_rational,
)
from .projective import (
    PLUCKER_PAIRS,
    Quadric,
    bilinear_form,
    determinant,
    dot,
    identity,
    is_zero_vector,
    mat_inverse,
    mat_mul,
    mat_vec,
    plucker_relation,
    polar_plane,
    proportional,
    wedge2,
    wedge3,
)
