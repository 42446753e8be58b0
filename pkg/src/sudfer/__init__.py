"""Numerical certificates and proof diagnostics for Gaussian comparison of
expected maxima.

The package turns the increment-comparison machinery for finite Gaussian
vectors into checkable numerical operations: increment matrices and
discrepancy certificates, the log-sum-exp smooth max with its softmax
calculus, the square-root interpolation path with Monte Carlo derivative
estimators, a Gaussian integration-by-parts residual checker, and seeded
experiment runners behind the ``sudfer`` command line tool.
"""

__version__ = "0.1.0"

from .bounds import (
    BoundCertificate,
    beta_tradeoff_bound,
    certify,
    check_domination,
    gamma_discrepancy,
    optimal_beta,
    sf_bound,
)
from .errors import (
    ConfigError,
    DegenerateGamma,
    DegenerateN,
    DimensionMismatch,
    DomainError,
    EmptyInput,
    FactorizationFailure,
    IndexOutOfRange,
    InvalidInput,
    MeanMismatch,
    NotCentered,
    NotPSD,
    NotSymmetric,
    SudferError,
    UnknownGenerator,
)
from .estimator import (
    MCEstimate,
    empirical_gap,
    expected_max_bivariate_exact,
    expected_max_mc,
)
from .experiments import (
    ExperimentConfig,
    dominated_pair,
    iid_standard_spec,
    random_spec,
    run_bound_check,
    run_experiment,
    run_path_diagnostics,
    run_sharpness,
    run_stein_check,
    spec_from_document,
    zero_spec,
)
from .gaussian import (
    GaussianSpec,
    IncrementMatrix,
    SampleBatch,
    blended_spec,
    derive_seed,
    increment_matrix,
    sample,
    validate_spec,
)
from .reports import (
    ExperimentReport,
    render,
    render_csv,
    render_json,
    write_report,
)
from .interpolation import (
    DerivativeEstimate,
    PathMonotonicityReport,
    PathPoint,
    path_monotonicity_report,
    path_point,
    phi,
    phi_derivative_explicit,
    phi_derivative_fd,
    stein_residual,
    stein_residuals,
)
from .smoothmax import (
    SmoothMaxParams,
    sandwich_gap,
    smooth_max,
    smooth_max_gradient,
    smooth_max_hessian,
    softmax,
)

__all__ = [
    "BoundCertificate",
    "ConfigError",
    "DegenerateGamma",
    "DegenerateN",
    "DerivativeEstimate",
    "DimensionMismatch",
    "DomainError",
    "EmptyInput",
    "ExperimentConfig",
    "ExperimentReport",
    "FactorizationFailure",
    "GaussianSpec",
    "IncrementMatrix",
    "IndexOutOfRange",
    "InvalidInput",
    "MCEstimate",
    "MeanMismatch",
    "NotCentered",
    "NotPSD",
    "NotSymmetric",
    "PathMonotonicityReport",
    "PathPoint",
    "SampleBatch",
    "SmoothMaxParams",
    "SudferError",
    "UnknownGenerator",
    "beta_tradeoff_bound",
    "blended_spec",
    "certify",
    "check_domination",
    "derive_seed",
    "dominated_pair",
    "empirical_gap",
    "expected_max_bivariate_exact",
    "expected_max_mc",
    "gamma_discrepancy",
    "iid_standard_spec",
    "increment_matrix",
    "optimal_beta",
    "path_monotonicity_report",
    "path_point",
    "phi",
    "phi_derivative_explicit",
    "phi_derivative_fd",
    "random_spec",
    "render",
    "render_csv",
    "render_json",
    "run_bound_check",
    "run_experiment",
    "run_path_diagnostics",
    "run_sharpness",
    "run_stein_check",
    "sample",
    "sandwich_gap",
    "sf_bound",
    "smooth_max",
    "smooth_max_gradient",
    "smooth_max_hessian",
    "softmax",
    "spec_from_document",
    "stein_residual",
    "stein_residuals",
    "validate_spec",
    "write_report",
    "zero_spec",
]
