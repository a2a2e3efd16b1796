"""Sparse least-squares in sequence space.

Solvers for the weighted l1-penalized least-squares problem

    minimize  1/2 ||K u - f||^2 + sum_k w_k |u_k|

built around a Newton-type active-set method on the nonsmooth fixed-point
equation of the soft-thresholding map, with an iterative-thresholding
baseline, duality-gap certificates, and generators for three reference
experiments (inverse integration, Haar-basis deblurring, compressed
sensing).
"""

from .operators import (
    CompositionMap,
    DenseMap,
    LinearMap,
    SubmatrixView,
    compose,
    identity,
    load_csv_matrix,
    load_csv_vector,
    normal_submatrix,
    operator_norm_estimate,
)
from .prox import (
    ActiveSet,
    Problem,
    Weights,
    active_inactive,
    objective,
    optimality_residual,
    shifted_gradient_point,
    soft_threshold,
    threshold_margin,
)
from .newton import (
    NewtonSystem,
    SingularSystemError,
    build_newton_system,
    inverse_norm_bound,
    soft_threshold_mask,
    solve_newton_step,
)
from .solvers import (
    IterationRecord,
    SolveOptions,
    SolveReport,
    SolveStatus,
    StopRule,
    compute_report_row,
    default_gamma,
    partition_step,
    solve_active_set,
    solve_ista,
    solve_ssn,
)
from .duality import (
    INFEASIBLE,
    DualCertificate,
    certify,
    datafit_conjugate,
    gap_tolerance,
    maxmin_residual_norm,
    maxmin_residual_vector,
    penalty_conjugate,
)
from .problems import (
    ExperimentKind,
    ExperimentSpec,
    GroundTruth,
    cs_operator,
    haar_synthesis,
    integration_operator,
    l2_reconstruction,
    load_bundle,
    lorentzian_blur,
    make_instance,
    plateau_signal,
    save_bundle,
)

__version__ = "0.1.0"

__all__ = [
    "LinearMap", "DenseMap", "CompositionMap", "SubmatrixView",
    "compose", "identity", "normal_submatrix", "operator_norm_estimate",
    "load_csv_matrix", "load_csv_vector",
    "Weights", "Problem", "ActiveSet",
    "soft_threshold", "objective", "optimality_residual",
    "active_inactive", "shifted_gradient_point", "threshold_margin",
    "NewtonSystem", "SingularSystemError", "build_newton_system",
    "solve_newton_step", "soft_threshold_mask", "inverse_norm_bound",
    "StopRule", "SolveStatus", "SolveOptions", "IterationRecord",
    "SolveReport", "solve_ssn", "solve_active_set", "solve_ista",
    "compute_report_row", "default_gamma",
    "INFEASIBLE", "DualCertificate", "certify", "gap_tolerance",
    "penalty_conjugate", "datafit_conjugate",
    "maxmin_residual_vector", "maxmin_residual_norm",
    "ExperimentKind", "ExperimentSpec", "GroundTruth",
    "integration_operator", "haar_synthesis", "lorentzian_blur",
    "cs_operator", "plateau_signal", "make_instance", "l2_reconstruction",
    "save_bundle", "load_bundle",
    "__version__",
]
