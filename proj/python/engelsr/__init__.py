"""Left-invariant sub-Riemannian Engel structures.

Canonical-frame extraction, the family I-V classification, normal
Hamiltonian flows with their first integrals, and conjugate-point
analysis of abnormal geodesics. All numerics live in the C++ core.
"""

from ._core import (
    BracketTable,
    CanonicalFrame,
    CoefficientProfile,
    DistributionData,
    EngelConstants,
    EngelError,
    Trajectory,
    abnormal_rhs,
    bracket,
    build_family,
    canonical_frame,
    center_momentum,
    classify,
    conjugate_shoot,
    conjugate_times_const,
    conservation_report,
    delta_const,
    delta_profile,
    derived_constants,
    diagnose_type3,
    free_parameters,
    growth_vector,
    hamiltonian,
    independence_matrix,
    integral_g,
    integrate,
    is_strict,
    jacobi_flow,
    jacobi_residual,
    jacobi_restrictions,
    levi_kernel,
    load_algebra_file,
    minimality_verdict,
    minimality_verdict_profile,
    nilpotent_engel_table,
    normal_rhs,
    right_momenta,
    structure_constants_from_t,
    tol_alg,
    type1_constants,
    type1_integrals,
    __version__,
)

__all__ = [
    "BracketTable",
    "CanonicalFrame",
    "CoefficientProfile",
    "DistributionData",
    "EngelConstants",
    "EngelError",
    "Trajectory",
    "abnormal_rhs",
    "bracket",
    "build_family",
    "canonical_frame",
    "center_momentum",
    "classify",
    "conjugate_shoot",
    "conjugate_times_const",
    "conservation_report",
    "delta_const",
    "delta_profile",
    "derived_constants",
    "diagnose_type3",
    "free_parameters",
    "growth_vector",
    "hamiltonian",
    "independence_matrix",
    "integral_g",
    "integrate",
    "is_strict",
    "jacobi_flow",
    "jacobi_residual",
    "jacobi_restrictions",
    "levi_kernel",
    "load_algebra_file",
    "minimality_verdict",
    "minimality_verdict_profile",
    "nilpotent_engel_table",
    "normal_rhs",
    "right_momenta",
    "structure_constants_from_t",
    "tol_alg",
    "type1_constants",
    "type1_integrals",
    "__version__",
]
