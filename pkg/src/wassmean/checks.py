"""Machine verification of the mean's order, determinant, positive-map,
tensor-product and Hadamard-product properties.

Each ``check_*`` function evaluates one inequality or identity on concrete
inputs and returns a :class:`CheckReport` whose margin is the smallest
eigenvalue of the slack matrix (log-gap for determinant checks, negated
relative error for identities). ``run_suite`` drives every registered check
over seeded random instances, always including the known equality cases.
"""

from dataclasses import dataclass

import numpy as np

from . import barycenter as bc
from .hermitian import (
    ToleranceConfig,
    frobenius,
    hermitianize,
    log_det,
    loewner_leq,
    matrix_power,
    random_commuting_spds,
    random_spd,
    random_unitary,
    require_spd,
    sqrtm,
)
from .means import arithmetic_mean, geometric_mean, validate_weights
from .products import (
    ensemble_tensor,
    hadamard,
    kron,
    random_isometry_map,
    weight_tensor,
)
from .reports import CheckReport

SELF_DUALITY_GAP = 1e-4
TENSOR_IDENTITY_RTOL = 1e-6


# ---------------------------------------------------------------------------
# seeded input generation
# ---------------------------------------------------------------------------

def _mix(seed, salt):
    # Distinct deterministic streams per (seed, salt) pair.
    return (int(seed) * 1_000_003 + salt * 7919 + 12345) % (2**63)


def random_weights(n, seed):
    """Strictly positive normalized weights, deterministic per seed."""
    rng = np.random.default_rng(seed)
    w = rng.uniform(0.2, 1.0, n)
    return w / w.sum()


def random_ensemble(m, n, seed, eig_lo=0.5, eig_hi=2.0, commuting=False):
    """Seeded random ensemble; ``commuting=True`` shares one eigenbasis."""
    if commuting:
        mats = random_commuting_spds(m, n, _mix(seed, 11), eig_lo, eig_hi)
    else:
        mats = [random_spd(m, _mix(seed, 13 + j), eig_lo, eig_hi) for j in range(n)]
    return bc.Ensemble(weights=random_weights(n, _mix(seed, 17)), matrices=mats)


def _solve(ensemble, cfg):
    report = bc.wasserstein_mean(ensemble, cfg)
    if not report.converged:
        raise RuntimeError(
            f"barycenter solve did not converge (residual {report.residual:.3e})"
        )
    return report.mean


# ---------------------------------------------------------------------------
# individual checks
# ---------------------------------------------------------------------------

def check_fixed_point_certificate(ensemble, cfg=None, tol=None):
    """Both residual forms of the mean's defining equation at the solved mean."""
    if cfg is None:
        cfg = bc.SolverConfig()
    if tol is None:
        tol = ToleranceConfig()
    report = bc.wasserstein_mean(ensemble, cfg)
    eq_res = bc.residual(report.mean, ensemble)
    acc = np.zeros((ensemble.dim, ensemble.dim), dtype=np.complex128)
    root = sqrtm(report.mean)
    for j in range(ensemble.size):
        acc += ensemble.weights[j] * sqrtm(
            hermitianize(root @ ensemble.matrices[j] @ root)
        )
    fp_res = frobenius(report.mean - acc) / frobenius(report.mean)
    holds = report.converged and eq_res <= tol.residual_tol and fp_res <= 1e-9
    return CheckReport(
        check_name="fixed_point",
        holds=holds,
        margin=-eq_res,
        inputs={"dim": ensemble.dim, "count": ensemble.size},
        details={
            "equation_residual": eq_res,
            "self_map_relative_residual": fp_res,
            "iterations": report.iterations,
            "converged": report.converged,
        },
    )


def check_logdet_concavity(weights, mats, tol=None):
    """log det of a convex combination dominates the combination of log dets,
    with equality exactly when all matrices coincide."""
    if tol is None:
        tol = ToleranceConfig()
    w = validate_weights(weights)
    mix = arithmetic_mean(w, mats)
    margin = log_det(mix) - sum(float(wj) * log_det(m) for wj, m in zip(w, mats))
    all_equal = all(frobenius(np.asarray(m) - np.asarray(mats[0])) <= 1e-8 for m in mats)
    return CheckReport(
        check_name="logdet_concavity",
        holds=margin >= -tol.loewner_tol,
        margin=float(margin),
        inputs={"count": int(w.size)},
        details={"equality": bool(margin <= 1e-10), "all_matrices_equal": all_equal},
    )


def check_phi_geometric_mean(a, b, phi, tol=None):
    """Compression of a geometric mean never exceeds the geometric mean of
    the compressions."""
    if tol is None:
        tol = ToleranceConfig()
    lhs = phi.apply(geometric_mean(a, b))
    rhs = geometric_mean(phi.apply(a), phi.apply(b))
    res = loewner_leq(lhs, rhs, tol)
    return CheckReport(
        check_name="phi_geometric_mean",
        holds=res.holds,
        margin=res.margin,
        inputs={"source_dim": phi.source_dim, "target_dim": phi.target_dim},
        details={"map_kind": phi.kind},
    )


def check_phi_wass(ensemble, phi, cfg=None, tol=None, explore=False):
    """Unital compressions of the mean and of its inverse both dominate
    2I minus the compressed arithmetic mean of the inverses / originals."""
    if cfg is None:
        cfg = bc.SolverConfig()
    if tol is None:
        tol = ToleranceConfig()
    eye_t = np.eye(phi.target_dim, dtype=np.complex128)
    unital_gap = frobenius(phi.apply(np.eye(phi.source_dim, dtype=np.complex128)) - eye_t)
    if unital_gap > 1e-10:
        raise ValueError(f"map is not unital: ||phi(I) - I||_F = {unital_gap:.3e}")
    mean = _solve(ensemble, cfg)
    mix_inv = np.zeros_like(eye_t)
    mix = np.zeros_like(eye_t)
    for j in range(ensemble.size):
        wj = ensemble.weights[j]
        mix_inv += wj * phi.apply(matrix_power(ensemble.matrices[j], -1.0))
        mix += wj * phi.apply(ensemble.matrices[j])
    first = loewner_leq(hermitianize(2.0 * eye_t - mix_inv), phi.apply(mean), tol)
    second = loewner_leq(hermitianize(2.0 * eye_t - mix), phi.apply(matrix_power(mean, -1.0)), tol)
    details = {
        "mean_side_margin": first.margin,
        "inverse_side_margin": second.margin,
        "map_kind": phi.kind,
    }
    if explore:
        # Side-by-side quantities whose order relation is untested: the
        # compressed mean vs the mean of the compressions.
        compressed = bc.Ensemble(
            weights=ensemble.weights,
            matrices=[phi.apply(ensemble.matrices[j]) for j in range(ensemble.size)],
        )
        details["compressed_mean_vs_mean_of_compressions_gap"] = frobenius(
            phi.apply(mean) - _solve(compressed, cfg)
        )
    return CheckReport(
        check_name="phi_wass",
        holds=first.holds and second.holds,
        margin=min(first.margin, second.margin),
        inputs={"dim": ensemble.dim, "count": ensemble.size,
                "source_dim": phi.source_dim, "target_dim": phi.target_dim},
        details=details,
    )


def check_self_duality_gap(ensemble, cfg=None):
    """The mean of the inverses differs from the inverse of the mean: the
    check passes when the Frobenius gap exceeds the demonstration threshold."""
    if cfg is None:
        cfg = bc.SolverConfig()
    mean = _solve(ensemble, cfg)
    inverted = bc.Ensemble(
        weights=ensemble.weights,
        matrices=[matrix_power(ensemble.matrices[j], -1.0) for j in range(ensemble.size)],
    )
    mean_of_inverses = _solve(inverted, cfg)
    gap = frobenius(mean_of_inverses - matrix_power(mean, -1.0))
    return CheckReport(
        check_name="self_duality_gap",
        holds=gap > SELF_DUALITY_GAP,
        margin=gap - SELF_DUALITY_GAP,
        inputs={"dim": ensemble.dim, "count": ensemble.size},
        details={"gap": gap, "threshold": SELF_DUALITY_GAP},
    )


def check_tensor_identity(a, b, cfg=None):
    """Kronecker product of two means equals the mean of the Kronecker-pair
    ensemble; margin is the negated relative Frobenius error."""
    if cfg is None:
        cfg = bc.SolverConfig()
    try:
        mean_a = _solve(a, cfg)
        mean_b = _solve(b, cfg)
        mean_t = _solve(ensemble_tensor(a, b), cfg)
    except RuntimeError as exc:
        return CheckReport(
            check_name="tensor_identity",
            holds=False,
            margin=-np.inf,
            inputs={"dims": [a.dim, b.dim], "counts": [a.size, b.size]},
            details={"error": str(exc)},
        )
    product = kron(mean_a, mean_b)
    rel_err = frobenius(product - mean_t) / frobenius(product)
    return CheckReport(
        check_name="tensor_identity",
        holds=rel_err <= TENSOR_IDENTITY_RTOL,
        margin=-rel_err,
        inputs={"dims": [a.dim, b.dim], "counts": [a.size, b.size]},
        details={"relative_error": rel_err, "tolerance": TENSOR_IDENTITY_RTOL},
    )


def check_tensor_arithmetic_bound(a, b, cfg=None, tol=None):
    """Kronecker product of two means below the arithmetic mean of all
    Kronecker pairs."""
    if cfg is None:
        cfg = bc.SolverConfig()
    if tol is None:
        tol = ToleranceConfig()
    lhs = kron(_solve(a, cfg), _solve(b, cfg))
    tensored = ensemble_tensor(a, b)
    rhs = arithmetic_mean(tensored.weights, tensored.matrices)
    res = loewner_leq(lhs, rhs, tol)
    return CheckReport(
        check_name="tensor_arithmetic_bound",
        holds=res.holds,
        margin=res.margin,
        inputs={"dims": [a.dim, b.dim], "counts": [a.size, b.size]},
        details={},
    )


def check_hadamard_arithmetic_bound(a, b, cfg=None, tol=None):
    """Hadamard product of two means below the arithmetic mean of all
    Hadamard pairs."""
    if cfg is None:
        cfg = bc.SolverConfig()
    if tol is None:
        tol = ToleranceConfig()
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} vs {b.dim}")
    lhs = hadamard(_solve(a, cfg), _solve(b, cfg))
    w = weight_tensor(a.weights, b.weights)
    rhs = np.zeros((a.dim, a.dim), dtype=np.complex128)
    idx = 0
    for i in range(a.size):
        for j in range(b.size):
            rhs += w[idx] * hadamard(a.matrices[i], b.matrices[j])
            idx += 1
    res = loewner_leq(lhs, hermitianize(rhs), tol)
    return CheckReport(
        check_name="hadamard_arithmetic_bound",
        holds=res.holds,
        margin=res.margin,
        inputs={"dim": a.dim, "counts": [a.size, b.size]},
        details={},
    )


def check_commuting_quadruple(a, b, c, d, tol=None):
    """For commuting pairs (a,b) and (c,d):
    (ab+ba) o (cd+dc) - (a^2+b^2) o (c^2+d^2) <= (a-b)^2 o (c-d)^2 / 2."""
    if tol is None:
        tol = ToleranceConfig()
    am, bm = require_spd(a, name="a"), require_spd(b, name="b")
    cm, dm = require_spd(c, name="c"), require_spd(d, name="d")
    for name, (x, y) in {"(a,b)": (am, bm), "(c,d)": (cm, dm)}.items():
        comm = frobenius(x @ y - y @ x)
        bound = 1e-8 * frobenius(x) * frobenius(y)
        if comm > bound:
            raise ValueError(
                f"pair {name} does not commute: commutator norm {comm:.3e} > {bound:.3e}"
            )
    lhs = hadamard(am @ bm + bm @ am, cm @ dm + dm @ cm) - hadamard(
        am @ am + bm @ bm, cm @ cm + dm @ dm
    )
    diff_ab = am - bm
    diff_cd = cm - dm
    rhs = 0.5 * hadamard(diff_ab @ diff_ab, diff_cd @ diff_cd)
    res = loewner_leq(hermitianize(lhs), hermitianize(rhs), tol)
    return CheckReport(
        check_name="commuting_quadruple",
        holds=res.holds,
        margin=res.margin,
        inputs={"dim": int(am.shape[0])},
        details={},
    )


def check_hadamard_inverse(a, b, tol=None):
    """Two-sided bound on the inverse of a Hadamard product:
    (a o b)^{-1} <= a^{-1} o b^{-1} <= K (a o b)^{-1} with K the Kantorovich
    constant of the Kronecker product's spectral edges."""
    if tol is None:
        tol = ToleranceConfig()
    am = require_spd(a, name="first matrix")
    bm = require_spd(b, name="second matrix")
    if am.shape != bm.shape:
        raise ValueError(f"dimension mismatch: {am.shape} vs {bm.shape}")
    had_inv = matrix_power(hadamard(am, bm), -1.0)
    inv_had = hadamard(matrix_power(am, -1.0), matrix_power(bm, -1.0))
    eigs = np.linalg.eigvalsh(kron(am, bm))
    lam_min, lam_max = float(eigs[0]), float(eigs[-1])
    constant = (lam_max + lam_min) ** 2 / (4.0 * lam_max * lam_min)
    lower = loewner_leq(had_inv, inv_had, tol)
    upper = loewner_leq(inv_had, constant * had_inv, tol)
    return CheckReport(
        check_name="hadamard_inverse",
        holds=lower.holds and upper.holds,
        margin=min(lower.margin, upper.margin),
        inputs={"dim": int(am.shape[0])},
        details={
            "lower_margin": lower.margin,
            "upper_margin": upper.margin,
            "kantorovich_constant": constant,
        },
    )


def _spectral_box(mats):
    lo = np.inf
    hi = 0.0
    for m in mats:
        eigs = np.linalg.eigvalsh(m)
        lo = min(lo, float(eigs[0]))
        hi = max(hi, float(eigs[-1]))
    return lo, hi


def check_kantorovich_hadamard(a, b, cfg=None, tol=None):
    """Kantorovich-type converse bound on the Hadamard product of two means
    against the mixed square-root terms of the pair ensembles."""
    if cfg is None:
        cfg = bc.SolverConfig()
    if tol is None:
        tol = ToleranceConfig()
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} vs {b.dim}")
    x = _solve(a, cfg)
    y = _solve(b, cfg)
    alpha, beta = _spectral_box(a.matrices)
    gamma, delta = _spectral_box(b.matrices)
    constant = (alpha * gamma + beta * delta) / (
        2.0 * np.sqrt(alpha * beta * gamma * delta)
    )
    xy = hadamard(x, y)
    root = sqrtm(xy)
    rhs = np.zeros_like(xy)
    for i in range(a.size):
        for j in range(b.size):
            wij = a.weights[i] * b.weights[j]
            inner = hermitianize(root @ hadamard(a.matrices[i], b.matrices[j]) @ root)
            rhs += wij * sqrtm(inner)
    res = loewner_leq(xy, constant * hermitianize(rhs), tol)
    return CheckReport(
        check_name="kantorovich_hadamard",
        holds=res.holds,
        margin=res.margin,
        inputs={"dim": a.dim, "counts": [a.size, b.size]},
        details={"constant": constant,
                 "bounds": [alpha, beta, gamma, delta]},
    )


def check_jensen_contraction(a, x, p, tol=None):
    """(x* a x)^p <= x* a^p x for 0 <= p <= 1 when the inverse of x is a
    contraction."""
    if tol is None:
        tol = ToleranceConfig()
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"power p={p} outside [0, 1]")
    am = require_spd(a, name="matrix")
    xm = np.ascontiguousarray(np.asarray(x, dtype=np.complex128))
    sv = np.linalg.svd(xm, compute_uv=False)
    inv_norm = 1.0 / float(sv[-1])
    if inv_norm > 1.0 + 1e-12:
        raise ValueError(
            f"inverse is not a contraction: ||x^-1||_op = {inv_norm:.6f} > 1"
        )
    lhs = matrix_power(hermitianize(xm.conj().T @ am @ xm), float(p))
    rhs = hermitianize(xm.conj().T @ matrix_power(am, float(p)) @ xm)
    res = loewner_leq(lhs, rhs, tol)
    return CheckReport(
        check_name="jensen_contraction",
        holds=res.holds,
        margin=res.margin,
        inputs={"dim": int(am.shape[0]), "p": float(p)},
        details={"inverse_operator_norm": inv_norm},
    )


def check_sqrt_sum_lower_bound(a, b, cfg=None, tol=None):
    """When both solved means dominate the identity, the weighted sum of
    Hadamard-pair square roots dominates a Kantorovich-type multiple of I.

    Returns a skipped report (not a failure) when the contraction
    precondition on the means fails.
    """
    if cfg is None:
        cfg = bc.SolverConfig()
    if tol is None:
        tol = ToleranceConfig()
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} vs {b.dim}")
    x = _solve(a, cfg)
    y = _solve(b, cfg)
    eye = np.eye(a.dim, dtype=np.complex128)
    pre_x = loewner_leq(eye, x, tol)
    pre_y = loewner_leq(eye, y, tol)
    if not (pre_x.holds and pre_y.holds):
        return CheckReport(
            check_name="sqrt_sum_lower_bound",
            holds=False,
            margin=min(pre_x.margin, pre_y.margin),
            inputs={"dim": a.dim, "counts": [a.size, b.size]},
            details={"reason": "solved means do not dominate the identity",
                     "mean_margins": [pre_x.margin, pre_y.margin]},
            skipped=True,
        )
    alpha, beta = _spectral_box(a.matrices)
    gamma, delta = _spectral_box(b.matrices)
    constant = 2.0 * np.sqrt(alpha * beta * gamma * delta) / (alpha * gamma + beta * delta)
    lhs = np.zeros_like(eye)
    for i in range(a.size):
        for j in range(b.size):
            lhs += a.weights[i] * b.weights[j] * sqrtm(
                hadamard(a.matrices[i], b.matrices[j])
            )
    res = loewner_leq(constant * eye, hermitianize(lhs), tol)
    return CheckReport(
        check_name="sqrt_sum_lower_bound",
        holds=res.holds,
        margin=res.margin,
        inputs={"dim": a.dim, "counts": [a.size, b.size]},
        details={"constant": constant},
    )


# ---------------------------------------------------------------------------
# suite runner
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SuitePlan:
    """What to run: check names, seed range [lo, hi), base dimensions, and
    the Loewner tolerance applied to every verdict."""

    checks: tuple = ()
    seeds: tuple = (0, 50)
    dims: tuple = (2, 3)
    tol: float = 1e-8

    def __post_init__(self):
        object.__setattr__(self, "checks", tuple(self.checks))
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))
        lo, hi = (int(s) for s in self.seeds)
        if hi <= lo:
            raise ValueError(f"seeds: empty range [{lo}, {hi})")
        object.__setattr__(self, "seeds", (lo, hi))
        if self.tol <= 0:
            raise ValueError("tol must be positive")
        if not self.dims or min(self.dims) < 1:
            raise ValueError("dims must be positive")
        unknown = [c for c in self.checks if c not in CHECK_REGISTRY]
        if unknown:
            raise ValueError(
                f"unknown checks {unknown}; known: {sorted(CHECK_REGISTRY)}"
            )

    def seed_list(self):
        return list(range(self.seeds[0], self.seeds[1]))

    def dim_for(self, seed):
        return self.dims[seed % len(self.dims)]

    def provenance(self):
        return {"seeds": list(self.seeds), "dims": list(self.dims), "tol": self.tol}


def _aggregate(name, plan, reports, extra_details=None):
    """Fold per-instance reports into one per-check report (worst margin)."""
    live = [r for r in reports if not r.skipped]
    skipped = len(reports) - len(live)
    if not live:
        return CheckReport(
            check_name=name,
            holds=False,
            margin=-np.inf,
            inputs=plan.provenance(),
            details={"instances": len(reports), "skipped_instances": skipped},
            skipped=True,
        )
    worst = min(live, key=lambda r: r.margin)
    details = {
        "instances": len(reports),
        "skipped_instances": skipped,
        "worst_details": worst.details,
        "worst_inputs": worst.inputs,
    }
    if extra_details:
        details.update(extra_details)
    return CheckReport(
        check_name=name,
        holds=all(r.holds for r in live),
        margin=worst.margin,
        inputs=plan.provenance(),
        details=details,
    )


def _suite_tol(plan):
    return ToleranceConfig(loewner_tol=plan.tol, relative=True)


def _drive_fixed_point(plan):
    cfg = bc.SolverConfig()
    tol = ToleranceConfig()
    reports = []
    for seed in plan.seed_list():
        m = plan.dim_for(seed)
        n = (2, 3, 5)[seed % 3]
        reports.append(
            check_fixed_point_certificate(random_ensemble(m, n, seed), cfg, tol)
        )
    # Equality case: the singleton ensemble solves exactly.
    single = bc.Ensemble(weights=[1.0], matrices=[random_spd(3, _mix(0, 23), 0.5, 2.0)])
    eq = check_fixed_point_certificate(single, cfg, tol)
    reports.append(eq)
    return _aggregate("fixed_point", plan, reports,
                      {"equality_case_margin": eq.margin})


def _drive_bounds(plan):
    cfg = bc.SolverConfig()
    tol = _suite_tol(plan)
    reports = []
    for seed in plan.seed_list():
        e = random_ensemble(plan.dim_for(seed), (2, 3, 5)[seed % 3], seed)
        reports.append(bc.check_bounds(e, _solve(e, cfg), tol))
    # Equality case: the identity singleton makes both bounds tight.
    eye = np.eye(2, dtype=np.complex128)
    single = bc.Ensemble(weights=[1.0], matrices=[eye])
    eq = bc.check_bounds(single, _solve(single, cfg), tol)
    reports.append(eq)
    return _aggregate("bounds", plan, reports, {"equality_case_margin": eq.margin})


def _drive_det_inequality(plan):
    cfg = bc.SolverConfig()
    tol = _suite_tol(plan)
    reports = []
    strict = True
    for seed in plan.seed_list():
        e = random_ensemble(plan.dim_for(seed), (2, 3)[seed % 2], seed)
        rep = bc.check_det_inequality(e, _solve(e, cfg), tol)
        strict = strict and rep.margin > 1e-10 and not rep.details["equality"]
        reports.append(rep)
    # Equality case: a constant ensemble.
    a = random_spd(3, _mix(1, 29), 0.5, 2.0)
    const = bc.Ensemble(weights=[0.25, 0.5, 0.25], matrices=[a, a, a])
    eq = bc.check_det_inequality(const, _solve(const, cfg), tol)
    ok = eq.details["equality"] and eq.details["all_matrices_equal"] and abs(eq.margin) <= 1e-9
    reports.append(eq)
    return _aggregate(
        "det_inequality",
        plan,
        reports,
        {"strict_on_distinct": strict, "equality_case_ok": ok,
         "equality_case_margin": eq.margin},
    )


def _drive_logdet_concavity(plan):
    tol = _suite_tol(plan)
    reports = []
    for seed in plan.seed_list():
        e = random_ensemble(plan.dim_for(seed), (2, 3, 4)[seed % 3], seed)
        reports.append(check_logdet_concavity(e.weights, e.matrices, tol))
    a = random_spd(3, _mix(2, 31), 0.5, 2.0)
    eq = check_logdet_concavity([0.5, 0.5], [a, a], tol)
    reports.append(eq)
    return _aggregate("logdet_concavity", plan, reports,
                      {"equality_case_margin": eq.margin})


def _drive_phi_geometric_mean(plan):
    tol = _suite_tol(plan)
    reports = []
    for seed in plan.seed_list():
        m = max(2, plan.dim_for(seed))
        k = max(1, m - 1 - seed % 2)
        phi = random_isometry_map(m, k, _mix(seed, 37))
        a = random_spd(m, _mix(seed, 41), 0.5, 2.0)
        b = random_spd(m, _mix(seed, 43), 0.5, 2.0)
        reports.append(check_phi_geometric_mean(a, b, phi, tol))
    # Equality case: a unitary conjugation commutes with the mean.
    m = 3
    phi = random_isometry_map(m, m, _mix(3, 47))
    a = random_spd(m, _mix(3, 53), 0.5, 2.0)
    b = random_spd(m, _mix(3, 59), 0.5, 2.0)
    eq = check_phi_geometric_mean(a, b, phi, tol)
    reports.append(eq)
    return _aggregate("phi_geometric_mean", plan, reports,
                      {"equality_case_margin": eq.margin})


def _drive_phi_wass(plan):
    cfg = bc.SolverConfig()
    tol = _suite_tol(plan)
    reports = []
    for idx, seed in enumerate(plan.seed_list()):
        m = max(2, plan.dim_for(seed))
        k = m if seed % 3 == 0 else max(1, m - 1)
        phi = random_isometry_map(m, k, _mix(seed, 61))
        e = random_ensemble(m, (2, 3)[seed % 2], seed)
        reports.append(check_phi_wass(e, phi, cfg, tol, explore=idx == 0))
    return _aggregate("phi_wass", plan, reports)


def _drive_self_duality_gap(plan):
    cfg = bc.SolverConfig()
    seeds = plan.seed_list()[: min(8, len(plan.seed_list()))]
    reports = []
    for seed in seeds:
        e = random_ensemble(max(2, plan.dim_for(seed)), 2 + seed % 2, seed)
        reports.append(check_self_duality_gap(e, cfg))
    best = max(reports, key=lambda r: r.details["gap"])
    agg = _aggregate("self_duality_gap", plan, reports,
                     {"max_gap": best.details["gap"]})
    # One demonstrated counterexample suffices; generic instances all show it.
    agg.holds = any(r.holds for r in reports)
    return agg


def _drive_tensor_identity(plan):
    cfg = bc.SolverConfig()
    reports = []
    for seed in plan.seed_list():
        n = 2 + seed % 2
        a = random_ensemble(2, n, _mix(seed, 67))
        b = random_ensemble(2, n, _mix(seed, 71))
        reports.append(check_tensor_identity(a, b, cfg))
    # Equality case: singleton ensembles reproduce the plain Kronecker product.
    sa = bc.Ensemble(weights=[1.0], matrices=[random_spd(2, _mix(4, 73), 0.5, 2.0)])
    sb = bc.Ensemble(weights=[1.0], matrices=[random_spd(2, _mix(4, 79), 0.5, 2.0)])
    eq = check_tensor_identity(sa, sb, cfg)
    reports.append(eq)
    return _aggregate("tensor_identity", plan, reports,
                      {"equality_case_margin": eq.margin})


def _drive_tensor_arithmetic_bound(plan):
    cfg = bc.SolverConfig()
    tol = _suite_tol(plan)
    reports = []
    for seed in plan.seed_list():
        n = 2 + seed % 2
        a = random_ensemble(2, n, _mix(seed, 83))
        b = random_ensemble(2, n, _mix(seed, 89))
        reports.append(check_tensor_arithmetic_bound(a, b, cfg, tol))
    sa = bc.Ensemble(weights=[1.0], matrices=[random_spd(2, _mix(5, 97), 0.5, 2.0)])
    sb = bc.Ensemble(weights=[1.0], matrices=[random_spd(2, _mix(5, 101), 0.5, 2.0)])
    eq = check_tensor_arithmetic_bound(sa, sb, cfg, tol)
    reports.append(eq)
    return _aggregate("tensor_arithmetic_bound", plan, reports,
                      {"equality_case_margin": eq.margin})


def _drive_hadamard_arithmetic_bound(plan):
    cfg = bc.SolverConfig()
    tol = _suite_tol(plan)
    reports = []
    for seed in plan.seed_list():
        m = plan.dim_for(seed)
        n = 2 + seed % 2
        a = random_ensemble(m, n, _mix(seed, 103))
        b = random_ensemble(m, n, _mix(seed, 107))
        reports.append(check_hadamard_arithmetic_bound(a, b, cfg, tol))
    sa = bc.Ensemble(weights=[1.0], matrices=[random_spd(3, _mix(6, 109), 0.5, 2.0)])
    sb = bc.Ensemble(weights=[1.0], matrices=[random_spd(3, _mix(6, 113), 0.5, 2.0)])
    eq = check_hadamard_arithmetic_bound(sa, sb, cfg, tol)
    reports.append(eq)
    return _aggregate("hadamard_arithmetic_bound", plan, reports,
                      {"equality_case_margin": eq.margin})


def _drive_commuting_quadruple(plan):
    tol = _suite_tol(plan)
    reports = []
    for seed in plan.seed_list():
        m = plan.dim_for(seed)
        a, b = random_commuting_spds(m, 2, _mix(seed, 127), 0.5, 2.0)
        c, d = random_commuting_spds(m, 2, _mix(seed, 131), 0.5, 2.0)
        reports.append(check_commuting_quadruple(a, b, c, d, tol))
    # Equality case: coincident pairs zero out both sides.
    a, _ = random_commuting_spds(3, 2, _mix(7, 137), 0.5, 2.0)
    c, _ = random_commuting_spds(3, 2, _mix(7, 139), 0.5, 2.0)
    eq = check_commuting_quadruple(a, a, c, c, tol)
    reports.append(eq)
    return _aggregate("commuting_quadruple", plan, reports,
                      {"equality_case_margin": eq.margin})


def _drive_hadamard_inverse(plan):
    tol = _suite_tol(plan)
    reports = []
    for seed in plan.seed_list():
        m = min(4, plan.dim_for(seed))
        a = random_spd(m, _mix(seed, 149), 0.5, 2.0)
        b = random_spd(m, _mix(seed, 151), 0.5, 2.0)
        reports.append(check_hadamard_inverse(a, b, tol))
    eye = np.eye(2, dtype=np.complex128)
    eq = check_hadamard_inverse(eye, eye, tol)
    reports.append(eq)
    return _aggregate("hadamard_inverse", plan, reports,
                      {"equality_case_margin": eq.margin})


def _drive_kantorovich_hadamard(plan):
    cfg = bc.SolverConfig()
    tol = _suite_tol(plan)
    reports = []
    for seed in plan.seed_list():
        m = min(3, plan.dim_for(seed))
        n = 2
        a = random_ensemble(m, n, _mix(seed, 157))
        b = random_ensemble(m, n, _mix(seed, 163))
        reports.append(check_kantorovich_hadamard(a, b, cfg, tol))
    eye = np.eye(2, dtype=np.complex128)
    si = bc.Ensemble(weights=[1.0], matrices=[eye])
    eq = check_kantorovich_hadamard(si, si, cfg, tol)
    reports.append(eq)
    return _aggregate("kantorovich_hadamard", plan, reports,
                      {"equality_case_margin": eq.margin})


def _drive_jensen_contraction(plan):
    tol = _suite_tol(plan)
    reports = []
    powers = (0.25, 0.5, 0.75)
    for seed in plan.seed_list():
        m = plan.dim_for(seed)
        a = random_spd(m, _mix(seed, 167), 0.5, 2.0)
        scale = 1.0 + (seed % 5) * 0.5
        x = scale * random_unitary(m, _mix(seed, 173))
        reports.append(check_jensen_contraction(a, x, powers[seed % 3], tol))
    # Equality cases: p = 1 always, p = 0 for unitary x.
    a = random_spd(3, _mix(8, 179), 0.5, 2.0)
    u = random_unitary(3, _mix(8, 181))
    eq_one = check_jensen_contraction(a, 2.0 * u, 1.0, tol)
    eq_zero = check_jensen_contraction(a, u, 0.0, tol)
    reports.extend([eq_one, eq_zero])
    return _aggregate(
        "jensen_contraction",
        plan,
        reports,
        {"equality_case_margins": [eq_one.margin, eq_zero.margin]},
    )


def _drive_sqrt_sum_lower_bound(plan):
    cfg = bc.SolverConfig()
    tol = _suite_tol(plan)
    reports = []
    for seed in plan.seed_list():
        m = plan.dim_for(seed)
        n = 2
        a = random_ensemble(m, n, _mix(seed, 191), eig_lo=1.0, eig_hi=3.0)
        b = random_ensemble(m, n, _mix(seed, 193), eig_lo=1.0, eig_hi=3.0)
        reports.append(check_sqrt_sum_lower_bound(a, b, cfg, tol))
    eye = np.eye(2, dtype=np.complex128)
    si = bc.Ensemble(weights=[1.0], matrices=[eye])
    eq = check_sqrt_sum_lower_bound(si, si, cfg, tol)
    reports.append(eq)
    return _aggregate("sqrt_sum_lower_bound", plan, reports,
                      {"equality_case_margin": eq.margin})


def _drive_corrupted_direction(plan):
    # Test hook: the arithmetic-mean bound asserted in the wrong direction.
    # Fails on any generic ensemble; never part of the default plan.
    cfg = bc.SolverConfig()
    tol = _suite_tol(plan)
    seed = plan.seeds[0]
    e = random_ensemble(max(2, plan.dim_for(seed)), 3, seed)
    mean = _solve(e, cfg)
    upper = arithmetic_mean(e.weights, e.matrices)
    res = loewner_leq(upper, mean, tol)
    return CheckReport(
        check_name="corrupted_direction",
        holds=res.holds,
        margin=res.margin,
        inputs=plan.provenance(),
        details={"note": "inequality direction deliberately reversed"},
    )


CHECK_REGISTRY = {
    "fixed_point": _drive_fixed_point,
    "bounds": _drive_bounds,
    "det_inequality": _drive_det_inequality,
    "logdet_concavity": _drive_logdet_concavity,
    "phi_geometric_mean": _drive_phi_geometric_mean,
    "phi_wass": _drive_phi_wass,
    "self_duality_gap": _drive_self_duality_gap,
    "tensor_identity": _drive_tensor_identity,
    "tensor_arithmetic_bound": _drive_tensor_arithmetic_bound,
    "hadamard_arithmetic_bound": _drive_hadamard_arithmetic_bound,
    "commuting_quadruple": _drive_commuting_quadruple,
    "hadamard_inverse": _drive_hadamard_inverse,
    "kantorovich_hadamard": _drive_kantorovich_hadamard,
    "jensen_contraction": _drive_jensen_contraction,
    "sqrt_sum_lower_bound": _drive_sqrt_sum_lower_bound,
    "corrupted_direction": _drive_corrupted_direction,
}

# "all" in plans and on the CLI expands to these (the hook check is opt-in).
DEFAULT_CHECKS = tuple(n for n in CHECK_REGISTRY if n != "corrupted_direction")


def default_plan(**overrides):
    kwargs = {"checks": DEFAULT_CHECKS}
    kwargs.update(overrides)
    return SuitePlan(**kwargs)


def run_suite(plan):
    """Run every check in the plan; a failing driver is captured in its
    report rather than aborting the suite. Reports follow plan order."""
    reports = []
    for name in plan.checks:
        driver = CHECK_REGISTRY[name]
        try:
            reports.append(driver(plan))
        except Exception as exc:  # noqa: BLE001 - captured per report
            reports.append(
                CheckReport(
                    check_name=name,
                    holds=False,
                    margin=-np.inf,
                    inputs=plan.provenance(),
                    details={"error": f"{type(exc).__name__}: {exc}"},
                )
            )
    return reports
