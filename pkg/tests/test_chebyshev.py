import numpy as np
import pytest

from kdvist.chebyshev import (cheb_points, vals_to_coeffs, coeffs_to_vals,
                              cheb_eval, fejer1_weights, divide_one_minus_tau,
                              cheb_diff_matrix, cheb_moments)


def test_transform_roundtrip():
    rng = np.random.default_rng(0)
    v = rng.normal(size=33) + 1j * rng.normal(size=33)
    a = vals_to_coeffs(v)
    assert np.allclose(coeffs_to_vals(a), v, atol=1e-12)


def test_coeffs_of_polynomial():
    x = cheb_points(16)
    v = 2 * x**3 - x + 0.5
    a = vals_to_coeffs(v)
    # 2T3 = 8x^3-6x -> x^3 = (T3 + 3T1)/4
    expect = np.zeros(16)
    expect[0], expect[1], expect[3] = 0.5, 0.5, 0.5
    assert np.allclose(a, expect, atol=1e-13)


def test_cheb_eval_complex():
    a = np.array([1.0, 2.0, -0.5])
    z = 0.3 + 0.4j
    assert cheb_eval(a, z) == pytest.approx(1 + 2 * z - 0.5 * (2 * z * z - 1))


def test_fejer_weights_integrate_polys():
    w = fejer1_weights(12)
    x = cheb_points(12)
    for k in range(10):
        assert np.dot(w, x**k) == pytest.approx((1 - (-1) ** (k + 1)) / (k + 1), abs=1e-13)


def test_divide_one_minus_tau():
    rng = np.random.default_rng(5)
    b_true = rng.normal(size=10)
    x = cheb_points(16)
    avals = (1 - x) * cheb_eval(b_true, x)
    a = vals_to_coeffs(avals)
    b = divide_one_minus_tau(a)
    assert np.allclose(cheb_eval(b, x), cheb_eval(b_true, x), atol=1e-11)


def test_divide_rejects_nonvanishing():
    a = np.zeros(8)
    a[0] = 1.0  # constant: (1)
    with pytest.raises(ValueError):
        divide_one_minus_tau(a)


def test_diff_matrix():
    x, D = cheb_diff_matrix(20)
    f = np.sin(2 * x)
    assert np.allclose(D @ f, 2 * np.cos(2 * x), atol=1e-9)


def test_moments():
    m = cheb_moments(6)
    assert m[0] == pytest.approx(2.0)
    assert m[1] == 0.0
    assert m[2] == pytest.approx(-2.0 / 3.0)
