"""Bures-Wasserstein distance, its geodesic, the Gaussian 2-Wasserstein
closed form, and the Hellinger distance for probability vectors."""

from dataclasses import dataclass

import numpy as np

from . import _kernels as _k
from .hermitian import hermitianize, require_spd

# Round-off this far below zero inside an outer square root is clamped to 0;
# anything worse is an error.
_NEGATIVE_CLAMP = 1e-12

PROB_SUM_TOL = 1e-12


@dataclass(frozen=True)
class GaussianParams:
    """A Gaussian law: mean vector and SPD covariance of matching dimension."""

    mean: np.ndarray
    cov: np.ndarray

    def __post_init__(self):
        mean = np.ascontiguousarray(np.asarray(self.mean, dtype=np.float64))
        if mean.ndim != 1:
            raise ValueError("mean: expected a 1-d vector")
        cov = require_spd(self.cov, name="cov")
        if mean.size != cov.shape[0]:
            raise ValueError(
                f"mean length {mean.size} does not match covariance dimension {cov.shape[0]}"
            )
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "cov", cov)


def _clamped_sqrt(gap, what):
    if gap < -_NEGATIVE_CLAMP:
        raise ValueError(f"{what}: squared value {gap:.6e} below -{_NEGATIVE_CLAMP}")
    return float(np.sqrt(max(gap, 0.0)))


def bw_distance(a, b):
    """Bures-Wasserstein distance between positive definite matrices.

    .. math::
        d(a, b) = \\left[ \\mathrm{tr}\\frac{a+b}{2}
                  - \\mathrm{tr}(a^{1/2} b a^{1/2})^{1/2} \\right]^{1/2}

    Parameters
    ----------
    a, b : ndarray, shape (m, m)
        Positive definite matrices.

    Returns
    -------
    float
        The distance; 0 for equal arguments. Round-off driving the bracket
        below zero by less than 1e-12 is clamped, anything worse raises.
    """
    am = require_spd(a, name="first matrix")
    bm = require_spd(b, name="second matrix")
    if am.shape != bm.shape:
        raise ValueError(f"dimension mismatch: {am.shape} vs {bm.shape}")
    return _clamped_sqrt(_k.bw_gap(am, bm), "distance")


def _cross_sqrt(a, b):
    # (a b)^{1/2} via the similarity a^{1/2} (a^{1/2} b a^{1/2})^{1/2} a^{-1/2}:
    # principal root with positive spectrum even though a b is not Hermitian.
    rs = _k.spd_power(a, 0.5)
    ris = _k.spd_power(a, -0.5)
    mid = _k.spd_power(hermitianize(rs @ b @ rs), 0.5)
    return rs @ mid @ ris


def geodesic(a, b, t):
    """Point on the Bures-Wasserstein geodesic from ``a`` to ``b``.

    .. math::
        a \\diamond_t b = (1-t)^2 a + t^2 b
                          + t(1-t)\\left[(ab)^{1/2} + (ba)^{1/2}\\right]

    Parameters
    ----------
    a, b : ndarray, shape (m, m)
        Positive definite endpoints.
    t : float
        Position in [0, 1]; 0 gives ``a``, 1 gives ``b``.

    Returns
    -------
    ndarray, shape (m, m)
        Positive definite point at constant-speed parameter ``t``.
    """
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"geodesic parameter t={t} outside [0, 1]")
    am = require_spd(a, name="first matrix")
    bm = require_spd(b, name="second matrix")
    if am.shape != bm.shape:
        raise ValueError(f"dimension mismatch: {am.shape} vs {bm.shape}")
    cross = _cross_sqrt(am, bm) + _cross_sqrt(bm, am)
    return hermitianize((1 - t) ** 2 * am + t**2 * bm + t * (1 - t) * cross)


def gaussian_w2(mu, nu):
    """2-Wasserstein distance between Gaussian laws.

    .. math::
        W_2^2(\\mu, \\nu) = |m_1 - m_2|^2
            + \\mathrm{tr}\\left[A + B - 2 (A^{1/2} B A^{1/2})^{1/2}\\right]

    Parameters
    ----------
    mu, nu : GaussianParams
        Mean vectors and covariances of matching dimension.

    Returns
    -------
    float
        The distance (not its square). For zero means it equals
        ``sqrt(2) * bw_distance(A, B)``.
    """
    if not isinstance(mu, GaussianParams):
        mu = GaussianParams(*mu)
    if not isinstance(nu, GaussianParams):
        nu = GaussianParams(*nu)
    if mu.cov.shape != nu.cov.shape:
        raise ValueError(f"dimension mismatch: {mu.cov.shape} vs {nu.cov.shape}")
    shift = float(np.sum((mu.mean - nu.mean) ** 2))
    trace_term = 2.0 * _k.bw_gap(mu.cov, nu.cov)
    return _clamped_sqrt(shift + trace_term, "Wasserstein distance")


def validate_prob_vector(p, name="probabilities"):
    """Validate a (possibly boundary) probability vector."""
    arr = np.asarray(p, dtype=np.float64)
    if arr.ndim != 1 or arr.size == 0:
        raise ValueError(f"{name}: expected a non-empty 1-d vector")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name}: entries must be finite")
    if np.any(arr < 0):
        j = int(np.argmin(arr))
        raise ValueError(f"{name}[{j}] = {arr[j]:.6g} is negative")
    total = float(arr.sum())
    if abs(total - 1.0) > PROB_SUM_TOL:
        raise ValueError(f"{name}: sum to {total:.6g}, must be 1 within {PROB_SUM_TOL}")
    return arr


def hellinger(p, q):
    """Hellinger distance [1/2 sum_i (sqrt(p_i) - sqrt(q_i))^2]^{1/2}."""
    pv = validate_prob_vector(p, name="first vector")
    qv = validate_prob_vector(q, name="second vector")
    if pv.size != qv.size:
        raise ValueError(f"length mismatch: {pv.size} vs {qv.size}")
    return float(np.sqrt(0.5 * np.sum((np.sqrt(pv) - np.sqrt(qv)) ** 2)))
