"""Hot numeric kernels: spectral matrix functions, the two-variable geometric
mean, the Bures-Wasserstein trace gap, and the barycenter fixed-point loop.

Every kernel exists twice with identical semantics: a pure-numpy function
(``*_np``) and a numba-jitted twin compiled from the same source. The module
attribute picked at import time decides which one the rest of the package
calls; set ``WASSMEAN_BACKEND=numpy`` to force the fallback, ``numba`` to
require the jit (default: numba when importable). All kernels take and return
C-contiguous complex128 arrays and already-symmetrized Hermitian input.
"""

import os

import numpy as np

try:
    from numba import njit
    from numba.extending import register_jitable

    NUMBA_AVAILABLE = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    NUMBA_AVAILABLE = False

    def register_jitable(func=None, **kwargs):
        if func is None:
            return lambda f: f
        return func

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f


# Solver status codes shared with barycenter.py.
SOLVE_CONVERGED = 0
SOLVE_MAX_ITER = 1
SOLVE_BREAKDOWN = 2


@register_jitable
def _sym(a):
    """Hermitian part (a + a*) / 2; kills round-off asymmetry."""
    return (a + a.conj().T) * 0.5


@register_jitable
def _fro(a):
    return np.sqrt(np.sum(np.abs(a) ** 2))


@register_jitable
def _spd_power(a, t):
    """a**t for Hermitian positive definite a via eigendecomposition."""
    w, v = np.linalg.eigh(a)
    return _sym((v * w**t) @ v.conj().T)


@register_jitable
def _gm_pair(a, b):
    """Geometric mean a^{1/2} (a^{-1/2} b a^{-1/2})^{1/2} a^{1/2}."""
    w, v = np.linalg.eigh(a)
    sw = np.sqrt(w)
    rs = _sym((v * sw) @ v.conj().T)
    ris = _sym((v * (1.0 / sw)) @ v.conj().T)
    mid = _spd_power(_sym(ris @ b @ ris), 0.5)
    return _sym(rs @ mid @ rs)


def spd_power_np(a, t):
    """Matrix power of an SPD matrix (spectral route)."""
    return _spd_power(a, t)


def geometric_mean_np(a, b):
    """Two-variable geometric mean of SPD matrices."""
    return _gm_pair(a, b)


def bw_gap_np(a, b):
    """tr((a+b)/2) - tr((a^{1/2} b a^{1/2})^{1/2}), the squared distance
    before non-negativity clamping."""
    rs = _spd_power(a, 0.5)
    w = np.linalg.eigvalsh(_sym(rs @ b @ rs))
    tr_cross = 0.0
    for i in range(w.shape[0]):
        if w[i] > 0.0:
            tr_cross += np.sqrt(w[i])
    tr_ab = 0.0
    for i in range(a.shape[0]):
        tr_ab += a[i, i].real + b[i, i].real
    return 0.5 * tr_ab - tr_cross


def mean_equation_residual_np(x, mats, weights):
    """Frobenius norm of I - sum_j w_j (A_j # x^{-1}), geometric means taken
    directly (independent of the solver's congruence shortcut)."""
    m = x.shape[0]
    xinv = _spd_power(x, -1.0)
    acc = np.zeros((m, m), dtype=np.complex128)
    for j in range(mats.shape[0]):
        acc = acc + weights[j] * _gm_pair(mats[j], xinv)
    return _fro(np.eye(m).astype(np.complex128) - acc)


def wasserstein_solve_np(mats, weights, x0, max_iter, tol, damped):
    """Fixed-point loop for the barycenter of ``mats`` under ``weights``.

    Per iterate x the map evaluates s = sum_j w_j (x^{1/2} a_j x^{1/2})^{1/2}
    and k = x^{-1/2} s x^{-1/2} = sum_j w_j (a_j # x^{-1}); the residual is
    ||I - k||_F. The damped update is x' = k x k (globally convergent); the
    plain update x' = s is kept for experimentation. Summation order is the
    matrix index order, fixed for determinism.

    Returns (best iterate, update steps taken, best residual, status) with
    status 0 converged / 1 iteration budget exhausted / 2 loss of positivity.
    """
    n = mats.shape[0]
    m = mats.shape[1]
    eye = np.eye(m).astype(np.complex128)
    x = x0.copy()
    best_x = x0.copy()
    best_res = np.inf
    status = SOLVE_MAX_ITER
    iters = 0
    for it in range(max_iter + 1):
        w, v = np.linalg.eigh(x)
        if w[0] <= 0.0:
            status = SOLVE_BREAKDOWN
            break
        sw = np.sqrt(w)
        rs = _sym((v * sw) @ v.conj().T)
        ris = _sym((v * (1.0 / sw)) @ v.conj().T)
        s = np.zeros((m, m), dtype=np.complex128)
        for j in range(n):
            s = s + weights[j] * _spd_power(_sym(rs @ mats[j] @ rs), 0.5)
        k = _sym(ris @ s @ ris)
        res = _fro(eye - k)
        if res < best_res:
            best_res = res
            best_x = x.copy()
        if res <= tol:
            status = SOLVE_CONVERGED
            break
        if it == max_iter:
            break
        if damped:
            x = _sym(k @ x @ k)
        else:
            x = s.copy()
        iters += 1
    return best_x, iters, best_res, status


if NUMBA_AVAILABLE:
    spd_power_jit = njit(cache=True)(spd_power_np)
    geometric_mean_jit = njit(cache=True)(geometric_mean_np)
    bw_gap_jit = njit(cache=True)(bw_gap_np)
    mean_equation_residual_jit = njit(cache=True)(mean_equation_residual_np)
    wasserstein_solve_jit = njit(cache=True)(wasserstein_solve_np)
else:  # pragma: no cover
    spd_power_jit = spd_power_np
    geometric_mean_jit = geometric_mean_np
    bw_gap_jit = bw_gap_np
    mean_equation_residual_jit = mean_equation_residual_np
    wasserstein_solve_jit = wasserstein_solve_np


def _pick_backend():
    choice = os.environ.get("WASSMEAN_BACKEND", "").strip().lower()
    if choice == "numpy":
        return "numpy"
    if choice == "numba":
        if not NUMBA_AVAILABLE:  # pragma: no cover
            raise ImportError("WASSMEAN_BACKEND=numba but numba is not importable")
        return "numba"
    if choice not in ("", "auto"):
        raise ValueError(f"WASSMEAN_BACKEND={choice!r}: expected 'numba' or 'numpy'")
    return "numba" if NUMBA_AVAILABLE else "numpy"


BACKEND = _pick_backend()

if BACKEND == "numba":
    spd_power = spd_power_jit
    geometric_mean = geometric_mean_jit
    bw_gap = bw_gap_jit
    mean_equation_residual = mean_equation_residual_jit
    wasserstein_solve = wasserstein_solve_jit
else:
    spd_power = spd_power_np
    geometric_mean = geometric_mean_np
    bw_gap = bw_gap_np
    mean_equation_residual = mean_equation_residual_np
    wasserstein_solve = wasserstein_solve_np
