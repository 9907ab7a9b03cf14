import numpy as np
import pytest

from kdvist.branches import lam, lam_cont, kappa, parametrix_w

SIGMA1 = np.array([[0.0, 1.0], [1.0, 0.0]])


def test_lam_basic_values():
    assert lam(1.25, 1.0) == pytest.approx(0.75)
    # degenerate cut: lam = z for c = 0
    zs = np.array([2.0 + 1.0j, -3.0 + 0.5j, 0.7 - 2.0j])
    assert np.allclose(lam(zs, 0.0), zs)


def test_lam_plus_at_zero_matches_imaginary_axis_limit():
    # continuity down the imaginary axis: lam(i eps) -> i c as eps -> 0
    for eps in [1e-3, 1e-5, 1e-7]:
        assert abs(lam(1j * eps, 1.0) - 1j * np.sqrt(1 + eps**2)) < 1e-12
    assert lam(0.0, 1.0, side="+") == pytest.approx(1j)


def test_lam_requires_side_on_cut():
    with pytest.raises(ValueError):
        lam(0.3, 1.0)


def test_lam_oddness_and_halfplane_sign():
    rng = np.random.default_rng(7)
    z = rng.normal(size=50) + 1j * rng.normal(size=50)
    z = z[np.abs(z.imag) > 1e-3]
    lv = lam(z, 1.3)
    assert np.allclose(lam(-z, 1.3), -lv, atol=1e-13)
    assert np.all(z.imag * lv.imag > 0)


def test_lam_asymptotic_to_z():
    z = 1e6 * np.exp(1j * np.linspace(0.1, 2 * np.pi - 0.1, 7))
    assert np.allclose(lam(z, 2.0) / z, 1.0, atol=1e-9)


def test_lam_cont_matches_lam_above_and_flips_below():
    rng = np.random.default_rng(3)
    z = rng.normal(size=20) + 1j * np.abs(rng.normal(size=20))
    assert np.allclose(lam_cont(z, 1.1), lam(z, 1.1), atol=1e-13)
    assert np.allclose(lam_cont(np.conj(z), 1.1), -lam(np.conj(z), 1.1), atol=1e-13)
    # on the cut it is the + boundary value
    s = np.linspace(-0.9, 0.9, 11)
    assert np.allclose(lam_cont(s, 1.0), 1j * np.sqrt(1 - s**2), atol=1e-14)


def test_parametrix_w_identities():
    rng = np.random.default_rng(11)
    z = rng.normal(size=25) * 3 + 1j * rng.normal(size=25) * 2
    z = z[np.abs(z.imag) > 1e-2]
    c = 1.0
    W = parametrix_w(z, c)
    Wm = parametrix_w(-z, c)
    # sigma1 W^{-1}(-z) sigma1 = W(z)
    Winv_m = np.linalg.inv(Wm)
    lhs = SIGMA1 @ Winv_m @ SIGMA1
    assert np.max(np.abs(lhs - W)) < 1e-12
    # det W = kappa
    dets = np.linalg.det(W)
    assert np.max(np.abs(dets - kappa(z, c))) < 1e-12


def test_parametrix_w_det_value():
    W = parametrix_w(np.array([2.0 + 0j]), 1.0)[0]
    assert np.linalg.det(W) == pytest.approx(np.sqrt(3.0), abs=1e-12)


def test_parametrix_w_identity_at_infinity():
    W = parametrix_w(np.array([1e6 + 1e5j]), 1.0)[0]
    assert np.max(np.abs(W - np.eye(2))) < 1e-5


def test_parametrix_w_cut_jump():
    # W+ = W- sigma1 on (-c, c), checked via small offsets
    c, s = 1.0, 0.3
    eps = 1e-8
    Wp = parametrix_w(np.array([s + 1j * eps]), c)[0]
    Wm = parametrix_w(np.array([s - 1j * eps]), c)[0]
    assert np.max(np.abs(Wp - Wm @ SIGMA1)) < 1e-4
    # exact boundary values via side flags
    Wp0 = parametrix_w(np.array([s + 0j]), c, side="+")[0]
    Wm0 = parametrix_w(np.array([s + 0j]), c, side="-")[0]
    assert np.max(np.abs(Wp0 - Wm0 @ SIGMA1)) < 1e-14


def test_w_commutes_with_sigma1():
    W = parametrix_w(np.array([0.4 + 0.7j]), 1.0)[0]
    assert np.max(np.abs(SIGMA1 @ W - W @ SIGMA1)) < 1e-14
