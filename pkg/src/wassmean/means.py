"""Two-variable geometric mean, weighted arithmetic mean, Kantorovich constant."""

import numpy as np

from . import _kernels as _k
from .hermitian import hermitianize, require_spd

WEIGHT_SUM_TOL = 1e-12


def validate_weights(weights, name="weights"):
    """Validate a strictly positive probability vector, returned as float64."""
    w = np.asarray(weights, dtype=np.float64)
    if w.ndim != 1 or w.size == 0:
        raise ValueError(f"{name}: expected a non-empty 1-d vector")
    if not np.all(np.isfinite(w)):
        raise ValueError(f"{name}: entries must be finite")
    if np.any(w <= 0):
        j = int(np.argmin(w))
        raise ValueError(f"{name}[{j}] = {w[j]:.6g} is not strictly positive")
    total = float(w.sum())
    if abs(total - 1.0) > WEIGHT_SUM_TOL:
        raise ValueError(f"{name}: sum to {total:.6g}, must be 1 within {WEIGHT_SUM_TOL}")
    return np.ascontiguousarray(w)


def geometric_mean(a, b):
    """Geometric mean a^{1/2} (a^{-1/2} b a^{-1/2})^{1/2} a^{1/2} of SPD a, b.

    The unique SPD solution X of X a^{-1} X = b; midpoint of the Riemannian
    geodesic between a and b.
    """
    am = require_spd(a, name="first matrix")
    bm = require_spd(b, name="second matrix")
    if am.shape != bm.shape:
        raise ValueError(f"dimension mismatch: {am.shape} vs {bm.shape}")
    return _k.geometric_mean(am, bm)


def arithmetic_mean(weights, mats):
    """Weighted arithmetic mean sum_j w_j A_j (fixed summation order)."""
    w = validate_weights(weights)
    if len(mats) != w.size:
        raise ValueError(f"count mismatch: {w.size} weights, {len(mats)} matrices")
    validated = [require_spd(m, name=f"matrices[{j}]") for j, m in enumerate(mats)]
    dim = validated[0].shape[0]
    for j, m in enumerate(validated):
        if m.shape[0] != dim:
            raise ValueError(f"matrices[{j}]: dimension {m.shape[0]} != {dim}")
    acc = np.zeros((dim, dim), dtype=np.complex128)
    for wj, mj in zip(w, validated):
        acc += wj * mj
    return hermitianize(acc)


def kantorovich(p, q):
    """Kantorovich constant (p+q)^2 / (4pq) for spectral bounds 0 < p <= q.

    Equals (r+1)^2 / (4r) at r = q/p; 1 at r = 1, nondecreasing in r.
    """
    if not (0 < p <= q):
        raise ValueError(f"need 0 < p <= q, got p={p}, q={q}")
    return (p + q) ** 2 / (4.0 * p * q)
