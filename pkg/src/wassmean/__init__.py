"""Bures-Wasserstein geometry of positive definite matrices: distances,
geodesics, barycenters, Kronecker/Hadamard products, positive linear maps,
and a Loewner-order verification suite for the identities relating them."""

from ._kernels import BACKEND
from .barycenter import (
    Ensemble,
    SolverBreakdownError,
    SolverConfig,
    SolverReport,
    check_bounds,
    check_det_inequality,
    commuting_closed_form,
    objective,
    residual,
    wasserstein_mean,
)
from .bures import GaussianParams, bw_distance, gaussian_w2, geodesic, hellinger
from .checks import DEFAULT_CHECKS, SuitePlan, default_plan, run_suite
from .hermitian import (
    EigenDecomposition,
    LoewnerResult,
    ToleranceConfig,
    congruence,
    eigh,
    hermitianize,
    log_det,
    loewner_leq,
    matrix_power,
    random_spd,
    random_unitary,
    require_hermitian,
    require_spd,
    sqrtm,
)
from .means import arithmetic_mean, geometric_mean, kantorovich, validate_weights
from .products import (
    PositiveMapSpec,
    ando_map,
    apply_map,
    ensemble_tensor,
    hadamard,
    kron,
    random_isometry_map,
    weight_tensor,
)
from .reports import CheckReport

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "CheckReport",
    "DEFAULT_CHECKS",
    "EigenDecomposition",
    "Ensemble",
    "GaussianParams",
    "LoewnerResult",
    "PositiveMapSpec",
    "SolverBreakdownError",
    "SolverConfig",
    "SolverReport",
    "SuitePlan",
    "ToleranceConfig",
    "ando_map",
    "apply_map",
    "arithmetic_mean",
    "bw_distance",
    "check_bounds",
    "check_det_inequality",
    "commuting_closed_form",
    "congruence",
    "default_plan",
    "eigh",
    "ensemble_tensor",
    "gaussian_w2",
    "geodesic",
    "geometric_mean",
    "hadamard",
    "hellinger",
    "hermitianize",
    "kantorovich",
    "kron",
    "log_det",
    "loewner_leq",
    "matrix_power",
    "objective",
    "random_isometry_map",
    "random_spd",
    "random_unitary",
    "require_hermitian",
    "require_spd",
    "residual",
    "run_suite",
    "sqrtm",
    "validate_weights",
    "wasserstein_mean",
    "weight_tensor",
]
