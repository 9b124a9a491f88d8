"""Wasserstein mean of an SPD ensemble: fixed-point solver, residual and
objective diagnostics, the commuting closed form, and the order/determinant
consequences of being the minimizer.

The mean of (w, A_1..A_n) is the unique SPD solution X of

    I = sum_j w_j (A_j # X^{-1}),   equivalently   X = sum_j w_j (X^{1/2} A_j X^{1/2})^{1/2},

which is the least-squares barycenter for the Bures-Wasserstein distance.
The solver iterates the damped self-map x' = k x k with
k = sum_j w_j (A_j # x^{-1}), starting from the arithmetic mean, and stops on
the Frobenius residual ||I - k||_F. The plain update x' = sum_j w_j
(x^{1/2} A_j x^{1/2})^{1/2} stays available behind ``SolverConfig.damped``.
"""

from dataclasses import dataclass

import numpy as np

from . import _kernels as _k
from .bures import bw_distance
from .hermitian import (
    ToleranceConfig,
    frobenius,
    hermitianize,
    log_det,
    loewner_leq,
    require_spd,
    sqrtm,
)
from .means import arithmetic_mean, validate_weights
from .reports import CheckReport

COMMUTATOR_RTOL = 1e-8


class SolverBreakdownError(RuntimeError):
    """An iterate lost positive definiteness; the run cannot continue."""


@dataclass(frozen=True)
class Ensemble:
    """Weight vector paired with same-dimension SPD matrices.

    ``matrices`` is stored as a C-order (n, m, m) complex128 stack; both
    fields are validated on construction.
    """

    weights: np.ndarray
    matrices: np.ndarray

    def __post_init__(self):
        w = validate_weights(self.weights)
        mats = self.matrices
        if not (isinstance(mats, np.ndarray) and mats.ndim == 3):
            mats = [require_spd(m, name=f"matrices[{j}]") for j, m in enumerate(mats)]
            dims = {m.shape[0] for m in mats}
            if len(dims) != 1:
                raise ValueError(f"matrices: mixed dimensions {sorted(dims)}")
            mats = np.ascontiguousarray(np.stack(mats))
        else:
            mats = np.ascontiguousarray(
                np.stack([require_spd(mats[j], name=f"matrices[{j}]") for j in range(mats.shape[0])])
            )
        if mats.shape[0] != w.size:
            raise ValueError(f"count mismatch: {w.size} weights, {mats.shape[0]} matrices")
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "matrices", mats)

    @property
    def size(self):
        return int(self.weights.size)

    @property
    def dim(self):
        return int(self.matrices.shape[1])


@dataclass(frozen=True)
class SolverConfig:
    """Fixed-point solver knobs.

    ``init`` is the starting iterate (None selects the arithmetic mean, an
    upper bound of the solution in the Loewner order, so always a safe start);
    ``damped=False`` switches to the plain self-map update, kept for
    experimentation only.
    """

    max_iter: int = 200
    residual_tol: float = 1e-11
    init: np.ndarray | None = None
    damped: bool = True

    def __post_init__(self):
        if self.max_iter < 1:
            raise ValueError("max_iter must be >= 1")
        if self.residual_tol <= 0:
            raise ValueError("residual_tol must be positive")


@dataclass(frozen=True)
class SolverReport:
    """Outcome of one barycenter solve; ``converged`` implies
    ``residual <= residual_tol``."""

    mean: np.ndarray
    iterations: int
    residual: float
    objective: float
    converged: bool

    def to_json_dict(self):
        from .io import matrix_to_json_dict

        return {
            "iterations": int(self.iterations),
            "residual": float(self.residual),
            "objective": float(self.objective),
            "converged": bool(self.converged),
            "mean": matrix_to_json_dict(self.mean),
        }


def wasserstein_mean(ensemble, config=None):
    """Solve for the Wasserstein mean of ``ensemble``.

    Non-convergence within the iteration budget returns the best iterate with
    ``converged=False``; loss of positivity raises ``SolverBreakdownError``.
    Deterministic for fixed inputs (fixed summation order).
    """
    if config is None:
        config = SolverConfig()
    if config.init is None:
        x0 = arithmetic_mean(ensemble.weights, ensemble.matrices)
    else:
        x0 = require_spd(config.init, name="init")
        if x0.shape[0] != ensemble.dim:
            raise ValueError(
                f"init: dimension {x0.shape[0]} does not match ensemble dimension {ensemble.dim}"
            )
    x, iters, res, status = _k.wasserstein_solve(
        ensemble.matrices,
        ensemble.weights,
        x0,
        config.max_iter,
        config.residual_tol,
        config.damped,
    )
    if status == _k.SOLVE_BREAKDOWN:
        raise SolverBreakdownError(
            f"iterate lost positive definiteness after {iters} iterations "
            f"(dimension {ensemble.dim}, {ensemble.size} matrices)"
        )
    return SolverReport(
        mean=x,
        iterations=iters,
        residual=float(res),
        objective=objective(x, ensemble),
        converged=status == _k.SOLVE_CONVERGED,
    )


def residual(x, ensemble):
    """||I - sum_j w_j (A_j # x^{-1})||_F, evaluated with direct geometric
    means (a route independent of the solver's internal shortcut)."""
    xm = require_spd(x, name="candidate")
    if xm.shape[0] != ensemble.dim:
        raise ValueError(f"dimension mismatch: {xm.shape[0]} vs {ensemble.dim}")
    return float(_k.mean_equation_residual(xm, ensemble.matrices, ensemble.weights))


def objective(x, ensemble):
    """Weighted sum of squared distances sum_j w_j d^2(x, A_j)."""
    xm = require_spd(x, name="candidate")
    if xm.shape[0] != ensemble.dim:
        raise ValueError(f"dimension mismatch: {xm.shape[0]} vs {ensemble.dim}")
    total = 0.0
    for j in range(ensemble.size):
        total += ensemble.weights[j] * bw_distance(xm, ensemble.matrices[j]) ** 2
    return float(total)


def commuting_closed_form(ensemble):
    """[sum_j w_j A_j^{1/2}]^2, the mean of a pairwise-commuting ensemble.

    Rejects ensembles whose worst pairwise commutator exceeds
    ``COMMUTATOR_RTOL`` relative to the factors' norms.
    """
    mats = ensemble.matrices
    for i in range(ensemble.size):
        for j in range(i + 1, ensemble.size):
            comm = frobenius(mats[i] @ mats[j] - mats[j] @ mats[i])
            bound = COMMUTATOR_RTOL * frobenius(mats[i]) * frobenius(mats[j])
            if comm > bound:
                raise ValueError(
                    f"matrices[{i}] and matrices[{j}] do not commute: "
                    f"commutator norm {comm:.3e} > {bound:.3e}"
                )
    acc = np.zeros((ensemble.dim, ensemble.dim), dtype=np.complex128)
    for j in range(ensemble.size):
        acc += ensemble.weights[j] * sqrtm(mats[j])
    return hermitianize(acc @ acc)


def check_bounds(ensemble, x, cfg=None):
    """Both order bounds of the mean: 2I - sum_j w_j A_j^{-1} <= x <= sum_j w_j A_j."""
    if cfg is None:
        cfg = ToleranceConfig()
    xm = require_spd(x, name="mean")
    eye = np.eye(ensemble.dim, dtype=np.complex128)
    inv_mix = np.zeros_like(eye)
    for j in range(ensemble.size):
        inv_mix += ensemble.weights[j] * _k.spd_power(ensemble.matrices[j], -1.0)
    lower = hermitianize(2.0 * eye - inv_mix)
    upper = arithmetic_mean(ensemble.weights, ensemble.matrices)
    low_res = loewner_leq(lower, xm, cfg)
    up_res = loewner_leq(xm, upper, cfg)
    return CheckReport(
        check_name="bounds",
        holds=low_res.holds and up_res.holds,
        margin=min(low_res.margin, up_res.margin),
        inputs={"dim": ensemble.dim, "count": ensemble.size,
                "weights": [float(w) for w in ensemble.weights]},
        details={"lower_margin": low_res.margin, "upper_margin": up_res.margin},
    )


def check_det_inequality(ensemble, x, cfg=None):
    """Determinant gap of the mean: log det(x) - sum_j w_j log det(A_j) >= 0,
    with equality exactly on constant ensembles.

    The equality flag is raised when the log gap is <= 1e-9 and cross-checked
    against the matrices actually coinciding within 1e-8.
    """
    if cfg is None:
        cfg = ToleranceConfig()
    xm = require_spd(x, name="mean")
    margin = log_det(xm)
    for j in range(ensemble.size):
        margin -= float(ensemble.weights[j]) * log_det(ensemble.matrices[j])
    equality = margin <= 1e-9
    all_equal = all(
        frobenius(ensemble.matrices[j] - ensemble.matrices[0]) <= 1e-8
        for j in range(1, ensemble.size)
    )
    return CheckReport(
        check_name="det_inequality",
        holds=margin >= -cfg.loewner_tol,
        margin=float(margin),
        inputs={"dim": ensemble.dim, "count": ensemble.size,
                "weights": [float(w) for w in ensemble.weights]},
        details={
            "equality": bool(equality),
            "all_matrices_equal": bool(all_equal),
            "equality_condition_consistent": bool(equality == all_equal),
        },
    )
