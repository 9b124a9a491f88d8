"""Dense complex Hermitian / positive definite matrix primitives.

Matrices are plain C-order ``complex128`` ndarrays. Validation helpers return
the symmetrized array so downstream spectral routines always see an exactly
Hermitian input; positive definiteness is enforced against a relative floor
(the open cone has no boundary members here, they are rejected).
"""

from dataclasses import dataclass

import numpy as np

from . import _kernels as _k

# Construction rejects matrices with min eigenvalue <= SPD_FLOOR * max(1, ||A||_F).
SPD_FLOOR = 1e-12

# Condition-number ceiling beyond which a congruence factor counts as singular.
SINGULAR_COND = 1e14


@dataclass(frozen=True)
class ToleranceConfig:
    """Tolerances for Loewner comparisons and residual certificates.

    With ``relative=True`` Loewner margins are compared against
    ``loewner_tol * max(1, ||A||_F, ||B||_F)``; otherwise against
    ``loewner_tol`` alone.
    """

    loewner_tol: float = 1e-9
    residual_tol: float = 1e-10
    relative: bool = True

    def __post_init__(self):
        if self.loewner_tol <= 0 or self.residual_tol <= 0:
            raise ValueError("tolerances must be positive")

    def loewner_scale(self, *mats):
        if not self.relative:
            return 1.0
        return max(1.0, *(frobenius(m) for m in mats))


@dataclass(frozen=True)
class LoewnerResult:
    """Outcome of a Loewner comparison: verdict plus the raw margin
    (smallest eigenvalue of the difference)."""

    holds: bool
    margin: float


@dataclass(frozen=True)
class EigenDecomposition:
    """Hermitian eigendecomposition a = unitary @ diag(eigenvalues) @ unitary*.

    Eigenvalues are ascending; the factor is unitary to working precision.
    """

    eigenvalues: np.ndarray
    unitary: np.ndarray


def as_complex_matrix(a, name="matrix"):
    """Coerce to a finite, 2-d, square-or-rectangular complex128 array."""
    arr = np.ascontiguousarray(np.asarray(a, dtype=np.complex128))
    if arr.ndim != 2:
        raise ValueError(f"{name}: expected a 2-d array, got ndim={arr.ndim}")
    if arr.size == 0:
        raise ValueError(f"{name}: empty matrix")
    if not np.all(np.isfinite(arr.real)) or not np.all(np.isfinite(arr.imag)):
        raise ValueError(f"{name}: entries must be finite (found NaN/Inf)")
    return arr


def frobenius(a):
    return float(np.linalg.norm(a))


def hermitianize(a):
    """Hermitian part (a + a*) / 2."""
    return (a + a.conj().T) * 0.5


def require_hermitian(a, atol=None, name="matrix"):
    """Validate Hermitian symmetry, then return the symmetrized matrix.

    ``atol`` defaults to 1e-12 * max(1, ||a||_F); pass an explicit value to
    pin the absolute file-format tolerance.
    """
    arr = as_complex_matrix(a, name=name)
    if arr.shape[0] != arr.shape[1]:
        raise ValueError(f"{name}: expected square matrix, got shape {arr.shape}")
    if atol is None:
        atol = 1e-12 * max(1.0, frobenius(arr))
    gap = np.abs(arr - arr.conj().T)
    worst = float(gap.max())
    if worst > atol:
        i, j = np.unravel_index(int(gap.argmax()), gap.shape)
        raise ValueError(
            f"{name}: not Hermitian at ({i},{j}): "
            f"|a[{i},{j}] - conj(a[{j},{i}])| = {worst:.3e} > {atol:.3e}"
        )
    return hermitianize(arr)


def require_spd(a, atol=None, name="matrix"):
    """Validate Hermitian positive definiteness against the relative floor."""
    arr = require_hermitian(a, atol=atol, name=name)
    floor = SPD_FLOOR * max(1.0, frobenius(arr))
    min_eig = float(np.linalg.eigvalsh(arr)[0])
    if min_eig <= floor:
        raise ValueError(
            f"{name}: not positive definite "
            f"(min eigenvalue {min_eig:.3e} <= floor {floor:.3e})"
        )
    return arr


def eigh(a, name="matrix"):
    """Checked Hermitian eigendecomposition with ascending eigenvalues.

    Raises ``numpy.linalg.LinAlgError`` carrying the matrix norm and dimension
    when the solver fails or the reconstruction drifts beyond
    1e-10 * max(1, ||a||_F).
    """
    arr = require_hermitian(a, name=name)
    m = arr.shape[0]
    try:
        w, v = np.linalg.eigh(arr)
    except np.linalg.LinAlgError as exc:
        raise np.linalg.LinAlgError(
            f"{name}: eigensolver failed for dimension {m}, "
            f"Frobenius norm {frobenius(arr):.6e}: {exc}"
        ) from exc
    recon_err = frobenius((v * w) @ v.conj().T - arr)
    bound = 1e-10 * max(1.0, frobenius(arr))
    if recon_err > bound:
        raise np.linalg.LinAlgError(
            f"{name}: eigendecomposition reconstruction error {recon_err:.3e} "
            f"exceeds {bound:.3e} (dimension {m}, norm {frobenius(arr):.6e})"
        )
    unitary_err = frobenius(v @ v.conj().T - np.eye(m))
    if unitary_err > 1e-10 * m:
        raise np.linalg.LinAlgError(
            f"{name}: eigenvector factor drifted from unitarity by "
            f"{unitary_err:.3e} (dimension {m})"
        )
    return EigenDecomposition(eigenvalues=w, unitary=np.ascontiguousarray(v))


def matrix_power(a, t, name="matrix"):
    """a**t for positive definite a, computed spectrally."""
    arr = require_spd(a, name=name)
    return _k.spd_power(arr, float(t))


def sqrtm(a, name="matrix"):
    """Principal square root of a positive definite matrix."""
    return matrix_power(a, 0.5, name=name)


def log_det(a, name="matrix"):
    """log det(a) as a sum of eigenvalue logs (no determinant overflow)."""
    arr = require_spd(a, name=name)
    return float(np.sum(np.log(np.linalg.eigvalsh(arr))))


def loewner_leq(a, b, cfg=None):
    """Tolerance-aware test of a <= b in the Loewner order.

    The margin is the smallest eigenvalue of b - a; the comparison holds when
    the margin is >= -loewner_tol * scale.
    """
    if cfg is None:
        cfg = ToleranceConfig()
    lhs = require_hermitian(a, name="lhs")
    rhs = require_hermitian(b, name="rhs")
    if lhs.shape != rhs.shape:
        raise ValueError(f"dimension mismatch: {lhs.shape} vs {rhs.shape}")
    margin = float(np.linalg.eigvalsh(hermitianize(rhs - lhs))[0])
    scale = cfg.loewner_scale(lhs, rhs)
    return LoewnerResult(holds=margin >= -cfg.loewner_tol * scale, margin=margin)


def congruence(x, a, name="matrix"):
    """Congruence transformation x a x*, re-symmetrized.

    Rejects transformation factors whose condition number estimate exceeds
    ``SINGULAR_COND``.
    """
    xm = as_complex_matrix(x, name="factor")
    am = require_hermitian(a, name=name)
    if xm.shape[0] != xm.shape[1] or xm.shape[1] != am.shape[0]:
        raise ValueError(
            f"dimension mismatch: factor has shape {xm.shape}, "
            f"matrix is {am.shape[0]}x{am.shape[0]}"
        )
    sv = np.linalg.svd(xm, compute_uv=False)
    if sv[-1] == 0.0 or sv[0] / sv[-1] > SINGULAR_COND:
        raise ValueError(
            f"factor is singular to working precision "
            f"(condition estimate {sv[0] / max(sv[-1], np.finfo(float).tiny):.3e})"
        )
    return hermitianize(xm @ am @ xm.conj().T)


def random_unitary(m, seed):
    """Haar-style random unitary: QR of a complex Ginibre matrix with the
    R-diagonal phases folded in (deterministic per seed)."""
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((m, m)) + 1j * rng.standard_normal((m, m))
    q, r = np.linalg.qr(g)
    d = np.diagonal(r)
    return np.ascontiguousarray(q * (d / np.abs(d)))


def random_hermitian(m, seed, scale=1.0):
    """Random Hermitian matrix with independent Gaussian entries."""
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((m, m)) + 1j * rng.standard_normal((m, m))
    return hermitianize(np.ascontiguousarray(scale * g))


def random_spd(m, seed, eig_lo, eig_hi):
    """Random positive definite matrix with spectrum drawn uniformly in
    [eig_lo, eig_hi], conjugated by a seeded random unitary."""
    if not (0 < eig_lo <= eig_hi):
        raise ValueError(f"invalid eigenvalue range [{eig_lo}, {eig_hi}]")
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((m, m)) + 1j * rng.standard_normal((m, m))
    q, r = np.linalg.qr(g)
    d = np.diagonal(r)
    u = q * (d / np.abs(d))
    lam = rng.uniform(eig_lo, eig_hi, m)
    return hermitianize(np.ascontiguousarray((u * lam) @ u.conj().T))


def random_commuting_spds(m, count, seed, eig_lo, eig_hi):
    """Family of pairwise-commuting SPD matrices: one shared random
    eigenbasis, independent spectra. Commutators vanish up to round-off."""
    if not (0 < eig_lo <= eig_hi):
        raise ValueError(f"invalid eigenvalue range [{eig_lo}, {eig_hi}]")
    u = random_unitary(m, seed)
    rng = np.random.default_rng(seed + 1)
    out = []
    for _ in range(count):
        lam = rng.uniform(eig_lo, eig_hi, m)
        out.append(hermitianize(np.ascontiguousarray((u * lam) @ u.conj().T)))
    return out
