import numpy as np
import pytest

from wassmean.hermitian import (
    ToleranceConfig,
    congruence,
    eigh,
    frobenius,
    hermitianize,
    log_det,
    loewner_leq,
    matrix_power,
    random_commuting_spds,
    random_hermitian,
    random_spd,
    random_unitary,
    require_hermitian,
    require_spd,
    sqrtm,
)


def test_eigh_identity():
    dec = eigh(np.eye(2, dtype=complex))
    assert np.allclose(dec.eigenvalues, [1.0, 1.0])
    u = dec.unitary
    assert np.allclose(u @ u.conj().T, np.eye(2), atol=1e-12)


def test_eigh_diagonal_sorted_ascending():
    dec = eigh(np.diag([9.0, 4.0]).astype(complex))
    assert np.allclose(dec.eigenvalues, [4.0, 9.0])


def test_eigh_reconstruction_random():
    a = random_hermitian(5, seed=42)
    dec = eigh(a)
    recon = (dec.unitary * dec.eigenvalues) @ dec.unitary.conj().T
    assert frobenius(recon - a) <= 1e-10 * max(1.0, frobenius(a))


def test_eigh_reconstruction_many_seeds():
    for seed in range(30):
        a = random_hermitian(4, seed=seed, scale=1.0 + seed % 3)
        dec = eigh(a)
        recon = (dec.unitary * dec.eigenvalues) @ dec.unitary.conj().T
        assert frobenius(recon - a) <= 1e-10 * max(1.0, frobenius(a))


def test_eigh_factor_is_unitary():
    for seed in range(10):
        a = random_hermitian(5, seed=seed)
        u = eigh(a).unitary
        assert frobenius(u @ u.conj().T - np.eye(5)) <= 1e-10 * 5


def test_matrix_power_scalar_half():
    assert np.allclose(matrix_power(4 * np.eye(2), 0.5), 2 * np.eye(2))


def test_matrix_power_diagonal_half():
    got = matrix_power(np.diag([1.0, 4.0, 9.0]), 0.5)
    assert np.allclose(got, np.diag([1.0, 2.0, 3.0]), atol=1e-12)


def test_matrix_power_half_round_trip():
    a = random_spd(4, seed=7, eig_lo=0.5, eig_hi=2.0)
    back = matrix_power(matrix_power(a, 0.5), 2.0)
    assert frobenius(back - a) <= 1e-10 * frobenius(a)


def test_matrix_power_endpoints():
    a = random_spd(3, seed=3, eig_lo=0.5, eig_hi=2.0)
    assert np.allclose(matrix_power(a, 1.0), a, atol=1e-13)
    assert np.allclose(matrix_power(a, 0.0), np.eye(3), atol=1e-13)


@pytest.mark.parametrize("s", [-1.0, -0.5, 0.5, 1.0, 2.0])
@pytest.mark.parametrize("t", [-1.0, -0.5, 0.5, 1.0, 2.0])
def test_matrix_power_group_law(s, t):
    a = random_spd(4, seed=11, eig_lo=0.5, eig_hi=2.0)
    combined = matrix_power(a, s + t)
    split = matrix_power(a, s) @ matrix_power(a, t)
    assert frobenius(combined - split) <= 1e-9 * max(1.0, frobenius(combined))


def test_sqrtm_identity_and_scalar():
    assert np.allclose(sqrtm(np.eye(3)), np.eye(3))
    assert np.allclose(sqrtm(9 * np.eye(3)), 3 * np.eye(3))


def test_sqrtm_multiply_back():
    a = random_spd(6, seed=1, eig_lo=0.5, eig_hi=2.0)
    r = sqrtm(a)
    assert frobenius(r @ r - a) <= 1e-10 * frobenius(a)


def test_loewner_ordered_pair():
    res = loewner_leq(np.eye(2), 2 * np.eye(2))
    assert res.holds
    assert res.margin == pytest.approx(1.0)


def test_loewner_reversed_pair():
    res = loewner_leq(2 * np.eye(2), np.eye(2))
    assert not res.holds
    assert res.margin == pytest.approx(-1.0)


def test_loewner_reflexive():
    a = random_hermitian(4, seed=5)
    res = loewner_leq(a, a)
    assert res.holds
    assert res.margin == 0.0


def test_loewner_antisymmetric_up_to_tolerance():
    cfg = ToleranceConfig()
    for seed in range(20):
        a = random_spd(3, seed=seed, eig_lo=0.5, eig_hi=2.0)
        b = a + 1e-12 * np.eye(3)
        if loewner_leq(a, b, cfg).holds and loewner_leq(b, a, cfg).holds:
            scale = cfg.loewner_scale(a, b)
            assert frobenius(a - b) <= 10 * cfg.loewner_tol * scale


def test_loewner_transitive_on_chains():
    rng = np.random.default_rng(0)
    for seed in range(20):
        a = random_spd(3, seed=seed, eig_lo=0.5, eig_hi=2.0)
        v = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
        p = hermitianize(v @ v.conj().T)
        b = a + 0.5 * p
        c = b + 0.25 * p
        assert loewner_leq(a, b).holds
        assert loewner_leq(b, c).holds
        assert loewner_leq(a, c).holds


def test_loewner_dimension_mismatch():
    with pytest.raises(ValueError, match="mismatch"):
        loewner_leq(np.eye(2), np.eye(3))


def test_log_det_identity_and_diag():
    assert log_det(np.eye(4)) == pytest.approx(0.0, abs=1e-12)
    assert log_det(np.diag([np.e, np.e**2])) == pytest.approx(3.0, rel=1e-12)


def test_log_det_kronecker_identity():
    # det(A (x) B) = det(A)^s det(B)^m for A m x m, B s x s.
    a = random_spd(3, seed=21, eig_lo=0.5, eig_hi=2.0)
    b = random_spd(3, seed=22, eig_lo=0.5, eig_hi=2.0)
    lhs = log_det(np.kron(a, b))
    rhs = 3 * log_det(a) + 3 * log_det(b)
    assert lhs == pytest.approx(rhs, abs=1e-9)


def test_congruence_identity_and_scaling():
    a = random_spd(3, seed=2, eig_lo=0.5, eig_hi=2.0)
    assert np.allclose(congruence(np.eye(3), a), a)
    assert np.allclose(congruence(2 * np.eye(3), a), 4 * a)


def test_congruence_unitary_on_identity():
    u = random_unitary(4, seed=9)
    assert np.allclose(congruence(u, np.eye(4)), np.eye(4), atol=1e-12)


def test_congruence_preserves_positive_definiteness():
    rng = np.random.default_rng(3)
    for seed in range(20):
        a = random_spd(4, seed=seed, eig_lo=0.5, eig_hi=2.0)
        x = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        out = congruence(x, a)
        assert np.linalg.eigvalsh(out)[0] > 0


def test_congruence_rejects_singular_factor():
    x = np.diag([1.0, 0.0]).astype(complex)
    with pytest.raises(ValueError, match="singular"):
        congruence(x, np.eye(2))


def test_random_spd_degenerate_spectrum_is_identity():
    assert np.allclose(random_spd(3, seed=0, eig_lo=1.0, eig_hi=1.0),
                       np.eye(3), atol=1e-12)


def test_random_spd_deterministic():
    a = random_spd(4, seed=42, eig_lo=0.5, eig_hi=2.0)
    b = random_spd(4, seed=42, eig_lo=0.5, eig_hi=2.0)
    assert np.array_equal(a, b)


def test_random_spd_respects_spectrum_range():
    eigs = np.linalg.eigvalsh(random_spd(5, seed=7, eig_lo=0.1, eig_hi=10.0))
    assert eigs[0] >= 0.1 - 1e-12
    assert eigs[-1] <= 10.0 + 1e-12


def test_random_spd_rejects_bad_range():
    with pytest.raises(ValueError, match="range"):
        random_spd(3, seed=0, eig_lo=2.0, eig_hi=1.0)
    with pytest.raises(ValueError, match="range"):
        random_spd(3, seed=0, eig_lo=-1.0, eig_hi=1.0)


def test_random_commuting_family_commutes():
    mats = random_commuting_spds(4, 3, seed=5, eig_lo=0.5, eig_hi=2.0)
    for i in range(3):
        for j in range(i + 1, 3):
            comm = frobenius(mats[i] @ mats[j] - mats[j] @ mats[i])
            assert comm <= 1e-10 * frobenius(mats[i]) * frobenius(mats[j])


def test_require_hermitian_rejects_asymmetry():
    bad = np.array([[1.0, 0.2], [0.0, 1.0]], dtype=complex)
    with pytest.raises(ValueError, match="not Hermitian"):
        require_hermitian(bad)


def test_require_spd_rejects_indefinite():
    with pytest.raises(ValueError, match="not positive definite"):
        require_spd(np.diag([1.0, -1.0]))


def test_require_spd_rejects_boundary():
    with pytest.raises(ValueError, match="not positive definite"):
        require_spd(np.diag([1.0, 0.0]))


def test_require_rejects_nonfinite():
    bad = np.array([[np.nan, 0.0], [0.0, 1.0]])
    with pytest.raises(ValueError, match="finite"):
        require_hermitian(bad)


def test_tolerance_config_validation():
    with pytest.raises(ValueError):
        ToleranceConfig(loewner_tol=0.0)
    with pytest.raises(ValueError):
        ToleranceConfig(residual_tol=-1.0)


def test_unitary_is_unitary():
    u = random_unitary(5, seed=13)
    assert frobenius(u @ u.conj().T - np.eye(5)) <= 1e-12
