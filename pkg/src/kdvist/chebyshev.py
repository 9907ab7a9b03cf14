"""
Chebyshev machinery on [-1,1]: first-kind point sets, value<->coefficient
transforms, Fejer quadrature, differentiation matrices, and the coefficient
manipulations (division by 1-tau) needed for moment extraction on unbounded
contour pieces.

All collocation in this package uses Chebyshev points of the first kind
(roots of T_n), so nodes never sit on piece endpoints or junctions.
"""

import numpy as np
from functools import lru_cache


def cheb_points(n):
    """First-kind Chebyshev points, descending in (-1,1): cos((2k+1)pi/2n)."""
    k = np.arange(n)
    return np.cos((2 * k + 1) * np.pi / (2 * n))


@lru_cache(maxsize=64)
def _vals_to_coeffs_matrix(n):
    # Discrete cosine transform (type II) written as a dense matrix; sizes
    # here are small enough that caching the matrix beats FFT set-up cost.
    k = np.arange(n)
    theta = (2 * k + 1) * np.pi / (2 * n)
    M = np.cos(np.outer(np.arange(n), theta)) * (2.0 / n)
    M[0, :] *= 0.5
    return M


def vals_to_coeffs(v):
    """Chebyshev-T coefficients of the degree n-1 interpolant through values
    at first-kind points (same ordering as cheb_points)."""
    v = np.asarray(v)
    return _vals_to_coeffs_matrix(v.shape[0]) @ v


@lru_cache(maxsize=64)
def _coeffs_to_vals_matrix(n):
    k = np.arange(n)
    theta = (2 * k + 1) * np.pi / (2 * n)
    return np.cos(np.outer(theta, np.arange(n)))


def coeffs_to_vals(a):
    a = np.asarray(a)
    return _coeffs_to_vals_matrix(a.shape[0]) @ a


def cheb_eval(a, x):
    """Evaluate a Chebyshev-T series at (possibly complex) points x by
    Clenshaw recurrence."""
    a = np.asarray(a)
    x = np.asarray(x)
    b1 = np.zeros_like(x, dtype=np.result_type(a.dtype, x.dtype, float))
    b2 = b1.copy()
    for c in a[:0:-1]:
        b1, b2 = 2 * x * b1 - b2 + c, b1
    return x * b1 - b2 + a[0]


@lru_cache(maxsize=64)
def fejer1_weights(n):
    """Fejer's first quadrature rule: weights at first-kind points for
    int_{-1}^{1} f dtau. Exact for polynomials of degree < n."""
    # w = M^T m where m_k = int T_k and M is the vals->coeffs map.
    m = np.zeros(n)
    k = np.arange(0, n, 2)
    m[k] = 2.0 / (1.0 - k**2)
    return _vals_to_coeffs_matrix(n).T @ m


def cheb_moments(n):
    """m_k = int_{-1}^1 T_k(tau) dtau for k < n."""
    m = np.zeros(n)
    k = np.arange(0, n, 2)
    m[k] = 2.0 / (1.0 - k**2)
    return m


def divide_one_minus_tau(a, strict=True):
    """Coefficients b with (1-tau)*b(tau) = a(tau).

    Requires a(1) = 0 (i.e. sum a_k = 0); the backward substitution is exact
    for polynomial data. If a(1) != 0, the mismatch lands in the k=0 residual
    and is reported (strict) or absorbed (non-strict).
    """
    a = np.asarray(a)
    n = a.shape[0]
    # relations: a_k = b_k - (b_{k-1}+b_{k+1})/2 for k>=2,
    #            a_1 = b_1 - b_0 - b_2/2,  a_0 = b_0 - b_1/2,
    # with b_k = 0 for k >= n-1.
    b = np.zeros(n + 2, dtype=np.result_type(a.dtype, float))
    for k in range(n - 1, 1, -1):
        b[k - 1] = 2 * (b[k] - a[k]) - b[k + 1]
    if n > 1:
        b[0] = b[1] - a[1] - b[2] / 2
    resid = a[0] - (b[0] - b[1] / 2 if n > 1 else b[0])
    if strict and abs(resid) > 1e-8 * (1 + np.abs(a).max()):
        raise ValueError(f"divide_one_minus_tau: nonzero endpoint residual {abs(resid):.3e}")
    return b[: max(n - 1, 1)]


@lru_cache(maxsize=16)
def cheb_diff_matrix(N):
    """Trefethen-style differentiation matrix on N+1 second-kind points
    cos(j pi/N), j=0..N (used only by the eigenvalue solver)."""
    if N == 0:
        return np.ones(1), np.zeros((1, 1))
    j = np.arange(N + 1)
    x = np.cos(np.pi * j / N)
    c = np.hstack([2.0, np.ones(N - 1), 2.0]) * (-1.0) ** j
    X = np.tile(x, (N + 1, 1)).T
    dX = X - X.T
    D = np.outer(c, 1.0 / c) / (dX + np.eye(N + 1))
    D -= np.diag(D.sum(axis=1))
    return x, D


def endpoint_derivatives(a, at=-1.0):
    """(P, P', P'') of a Chebyshev series at tau = -1 or +1, from the
    closed forms T_k(+-1) = (+-1)^k, T_k'(+-1) = (+-1)^{k+1} k^2,
    T_k''(+-1) = (+-1)^k k^2 (k^2-1)/3."""
    a = np.asarray(a)
    k = np.arange(a.shape[0])
    if at == -1.0:
        sgn = (-1.0) ** k
        p0 = np.sum(a * sgn)
        p1 = np.sum(a * (-sgn) * k**2)
        p2 = np.sum(a * sgn * k**2 * (k**2 - 1) / 3.0)
    elif at == 1.0:
        p0 = np.sum(a)
        p1 = np.sum(a * k**2)
        p2 = np.sum(a * k**2 * (k**2 - 1) / 3.0)
    else:
        raise ValueError("at must be -1 or +1")
    return p0, p1, p2


def chop_coeffs(a, rel=3e-13):
    """Truncate a Chebyshev coefficient vector at its noise floor, so that
    off-interval evaluation does not amplify rounding noise."""
    a = np.asarray(a)
    mags = np.abs(a)
    top = mags.max()
    if top == 0:
        return a[:1]
    keep = np.nonzero(mags > rel * top)[0]
    return a[: keep[-1] + 1] if keep.size else a[:1]
