"""dgstab: decide, certify, and refute region/class/operation stability
of real square matrices.

A matrix ``A`` is stable for a triple (region, class, operation) when
the spectrum of ``G o A`` stays inside the region for every member
``G`` of the class.  This package provides the regions, the matrix
classes, the binary operations, sufficiency certificates with
verification, randomized falsification, and a three-valued decision
engine on top, plus a JSON/CLI surface.
"""

from .algebra import ADD, HADAMARD, MUL, BinaryOp, OpKind, Side, apply
from .certify import (
    CertKind,
    Certificate,
    CertReport,
    find_diagonal_lyapunov,
    find_stein_diagonal,
    find_structured_lyapunov,
    implied_stabilities,
    verify_certificate,
)
from .classes import (
    ClassKind,
    MatrixClass,
    Partition,
    alpha_block_spd,
    alpha_scalar,
    box_diag,
    chain_memberships,
    closure_probe,
    contains,
    diag,
    enumerate_members,
    explicit_list,
    identity_element,
    parametric_rank_one,
    pos_alpha_scalar,
    pos_diag,
    rank_k_positive,
    sample,
    sign_diag,
    spd,
    sum_rank_one_positive,
    symmetric,
    theta_ordered,
    theta_ratios,
    vertex_diag,
)
from .engine import (
    Query,
    Transform,
    TransformKind,
    Verdict,
    VerdictStatus,
    check_region_stability,
    decide,
    falsify,
    inertia_preserving,
    stabilize,
    total_stability,
    transfer_verdict,
    transform_query,
)
from .linalg import (
    case_i_coefficients,
    case_iii_coefficients,
    eigenvalues,
    hill_form,
    is_positive_definite,
    principal_submatrix,
    solve_lyapunov,
    solve_stein,
    spectral_radius,
    symmetric_part,
)
from .regions import (
    Inertia,
    PointClass,
    Region,
    RegionKind,
    RegionTransform,
    classify_point,
    hill_region,
    inertia_of,
    is_scale_invariant,
    left_half_plane,
    nonzero_real_part,
    positive_ray,
    punctured_plane,
    real_axis,
    right_half_plane,
    sector,
    spectrum_in_region,
    transform_region,
    unit_disk,
)

__version__ = "0.1.0"
