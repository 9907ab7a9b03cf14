"""
Cauchy transforms of piecewise mapped-Chebyshev densities.

On the reference interval, with L(z) = Log((z-1)/(z+1)) (cut on [-1,1]):

    C[T_k](z) = (1/2pi i) [ T_k(z) L(z) + Q_k(z) ],
    Q_0 = 0, Q_1 = 2, Q_{k+1} = 2 z Q_k - Q_{k-1} + 2 m_k,
    m_k = int T_k = (1+(-1)^k)/(1-k^2).

Boundary values replace L by L(x) -+... : L_plusminus(x) = log((1-x)/(1+x)) +- i pi,
giving the Plemelj jump C+ - C- = id exactly.

Charts reduce every piece to the interval: for a Moebius ray chart the
kernel is exactly 1/(tau - tau_z) + 1/(1 - tau); for arcs the remainder
S(tau, z) = M'(tau)/(M(tau)-z) - 1/(tau-tau_z) is analytic and handled by
quadrature.  Far queries (chart preimage outside a Bernstein radius) use
plain quadrature of the smooth kernel.

All operators act on *value* vectors at the first-kind nodes.
"""

import numpy as np
from functools import lru_cache

from .chebyshev import (cheb_points, fejer1_weights, cheb_moments,
                        _vals_to_coeffs_matrix)

TWO_PI_I = 2j * np.pi
RHO_SPLIT = 1.9          # chart-ellipse radius separating formula/quadrature


def bernstein_rho(tau):
    """Ellipse parameter rho(tau) >= 1 of a point in the chart plane."""
    tau = np.asarray(tau, dtype=complex)
    w = tau + np.sqrt(tau - 1) * np.sqrt(tau + 1)
    r = np.abs(w)
    return np.maximum(r, 1.0 / np.maximum(r, 1e-300))


def chebvander(tau, n):
    """T_k(tau) for k < n (columns), complex-safe."""
    tau = np.asarray(tau, dtype=complex).ravel()
    V = np.empty((tau.size, n), dtype=complex)
    V[:, 0] = 1.0
    if n > 1:
        V[:, 1] = tau
    for k in range(2, n):
        V[:, k] = 2 * tau * V[:, k - 1] - V[:, k - 2]
    return V


def q_polys(tau, n):
    """Q_k(tau) for k < n (columns)."""
    tau = np.asarray(tau, dtype=complex).ravel()
    m = cheb_moments(max(n, 2))
    Q = np.empty((tau.size, n), dtype=complex)
    Q[:, 0] = 0.0
    if n > 1:
        Q[:, 1] = 2.0
    for k in range(2, n):
        Q[:, k] = 2 * tau * Q[:, k - 1] - Q[:, k - 2] + 2 * m[k - 1]
    return Q


def interval_cauchy(tau, n, side=None):
    """Matrix mapping Chebyshev coefficients to C[p](tau) values.

    side=None: off-interval points (principal log).
    side='+'/'-': boundary values at real tau in (-1,1).
    """
    tau = np.asarray(tau, dtype=complex).ravel()
    V = chebvander(tau, n)
    Q = q_polys(tau, n)
    if side is None:
        Lg = np.log((tau - 1) / (tau + 1))
    else:
        x = tau.real
        Lg = np.log((1 - x) / (1 + x)) + (1j * np.pi if side == "+" else -1j * np.pi)
    return (V * Lg[:, None] + Q) / TWO_PI_I


@lru_cache(maxsize=256)
def _v2c(n):
    return _vals_to_coeffs_matrix(n)


class PieceOps:
    """Per-piece discrete Cauchy machinery (value-space)."""

    def __init__(self, piece):
        self.piece = piece
        n = piece.n
        self.taus = piece.taus
        self.nodes = piece.nodes
        self.v2c = _v2c(n)
        self.wq = fejer1_weights(n)
        self._mp_nodes = piece.Mp(self.taus)
        # regularization row for rays: -(1/2pii) sum_k a_k Q_k(1)
        if piece.kind == "ray":
            q1 = q_polys(np.array([1.0 + 0j]), n)[0]
            self._ray_row = -(q1 / TWO_PI_I) @ self.v2c
        else:
            self._ray_row = None

    # --- boundary values at own nodes -------------------------------
    def boundary_matrix(self, side):
        """C^side at this piece's own nodes (n x n, value space); side is
        relative to the oriented contour."""
        p = self.piece
        chart_side = side if p.orient == 1 else ("-" if side == "+" else "+")
        M = interval_cauchy(self.taus, p.n, side=chart_side) @ self.v2c
        if p.kind == "sqrtseg":
            # second chart preimage tau2 = -tau - 2 (off the interval)
            M = M + interval_cauchy(-self.taus - 2.0, p.n) @ self.v2c
        M = M + self._smooth_correction(self.nodes, self.taus)
        if self._ray_row is not None:
            M = M + np.ones((p.n, 1)) * self._ray_row[None, :]
        return p.orient * M

    # --- evaluation at other points ----------------------------------
    def eval_matrix(self, z):
        """C at points z off this piece (len(z) x n, value space)."""
        p = self.piece
        z = np.asarray(z, dtype=complex).ravel()
        if p.kind == "sqrtseg":
            return p.orient * self._eval_sqrtseg(z)
        out = np.zeros((z.size, p.n), dtype=complex)
        tau_z = p.tau_of(z)
        rho = bernstein_rho(tau_z)
        near = rho <= RHO_SPLIT
        if np.any(near):
            tz = tau_z[near]
            M = interval_cauchy(tz, p.n) @ self.v2c
            M = M + self._smooth_correction(z[near], tz)
            if self._ray_row is not None:
                M = M + np.ones((tz.size, 1)) * self._ray_row[None, :]
            out[near] = M
        if np.any(~near):
            zf = z[~near]
            K = self._mp_nodes[None, :] / (self.piece.M(self.taus)[None, :] - zf[:, None])
            out[~near] = (K * self.wq[None, :]) / TWO_PI_I
        return p.orient * out

    def _eval_sqrtseg(self, z):
        """Kernel splits exactly: M'/(M-z) = 1/(t-t1) + 1/(t-t2),
        t1 = 2 sig - 1, t2 = -2 sig - 1, sig = sqrt((z-e)/g)."""
        p = self.piece
        n = p.n
        out = np.zeros((z.size, n), dtype=complex)
        sig = np.sqrt((z - p.params[0]) / p.params[1])
        for tau_b in (2 * sig - 1, -2 * sig - 1):
            rho = bernstein_rho(tau_b)
            near = rho <= RHO_SPLIT
            if np.any(near):
                out[near] += interval_cauchy(tau_b[near], n) @ self.v2c
            if np.any(~near):
                K = 1.0 / (self.taus[None, :] - tau_b[~near][:, None])
                out[~near] += (K * self.wq[None, :]) / TWO_PI_I
        return out

    def _smooth_correction(self, z, tau_z):
        """(1/2pii) int u(tau) S(tau, tau_z) dtau with
        S = M'/(M - z) - 1/(tau - tau_z); zero for segments, the exact
        1/(1-tau) row for rays, quadrature for arcs."""
        p = self.piece
        n = p.n
        if p.kind == "segment":
            return 0.0
        if p.kind == "ray":
            # handled by the constant _ray_row (independent of z)
            return 0.0
        taus = self.taus
        Mv = p.M(taus)
        Mp = self._mp_nodes
        z = np.asarray(z, dtype=complex).ravel()
        tau_z = np.asarray(tau_z, dtype=complex).ravel()
        with np.errstate(divide="ignore", invalid="ignore"):
            S = (Mp[None, :] / (Mv[None, :] - z[:, None])
                 - 1.0 / (taus[None, :] - tau_z[:, None]))
        close = np.abs(taus[None, :] - tau_z[:, None]) < 1e-6
        if np.any(close):
            Mpp = p.Mpp(taus)
            Srep = np.broadcast_to((Mpp / (2 * Mp))[None, :], S.shape)
            S = np.where(close, Srep, S)
        return (S * self.wq[None, :]) / TWO_PI_I

    # --- line integral -------------------------------------------------
    def moment_weights(self):
        """Row vector w with w . uvals = int_piece u(s) ds."""
        p = self.piece
        if p.kind == "segment":
            a, b = p.params
            return p.orient * 0.5 * (b - a) * self.wq
        if p.kind in ("arc", "sqrtseg"):
            return p.orient * (self.wq * self._mp_nodes)
        # ray: int u 2 d/(1-tau)^2 dtau via double division by (1-tau)
        a, d = p.params
        n = p.n
        D = _division_matrix(n)
        m = cheb_moments(n)
        row = m @ (D @ D) @ self.v2c
        return p.orient * 2 * d * row


@lru_cache(maxsize=64)
def _division_matrix(n):
    """Matrix D with (D a) = coefficients of p(tau)/(1-tau) (the endpoint
    residual, if any, is dropped)."""
    from .chebyshev import divide_one_minus_tau
    D = np.zeros((n, n))
    for j in range(n):
        e = np.zeros(n)
        e[j] = 1.0
        b = divide_one_minus_tau(e, strict=False)
        D[: len(b), j] = b
    return D


def off_contour_eval(ops_list, density, z):
    """Cauchy transform of the full density at points z off the contour.
    density: (N, 2) stacked values; returns (len(z), 2)."""
    z = np.asarray(z, dtype=complex).ravel()
    out = np.zeros((z.size, density.shape[1]), dtype=complex)
    k = 0
    for ops in ops_list:
        n = ops.piece.n
        M = ops.eval_matrix(z)
        out += M @ density[k:k + n]
        k += n
    return out
