"""
Discrete spectrum of -d^2/dx^2 - u(x,0) and the norming constants.

Eigenvalues are computed from the Chebyshev discretization
-D_{N,L}^2 - diag u(x,0) with Dirichlet walls at +-L, and accepted only
when stable under N -> 2N refinement.  Bound states E_j < 0 map to poles
z_j = i sqrt(-E_j) of the transmission problem (zeros of a).

Norming constants, from the residue calculus:

    c(z_j) = b_j / a'(z_j),     C(z_j) = 1/(b_j A'(z_j)),
    b_j = psi^p(z_j;0)/phi^m(z_j;0),   A'(z_j) = a'(z_j) z_j/lam(z_j),

with a'(z_j) evaluated by a Cauchy-ring derivative of the analytic a.
"""

import numpy as np

from .branches import lam
from .chebyshev import cheb_diff_matrix


def schrodinger_bound_states(u, L, N, emax=-1e-8):
    """Eigenvalues E < emax of -psi'' - u psi with Dirichlet walls at +-L,
    via the degree-N Chebyshev differentiation matrix scaled to [-L, L]."""
    x, D = cheb_diff_matrix(N)
    xs = L * x
    D2 = (D @ D) / (L * L)
    H = -D2[1:-1, 1:-1] - np.diag(u(xs[1:-1]))
    E = np.linalg.eigvals(H)
    keep = (np.abs(E.imag) < 1e-6 * np.maximum(1.0, np.abs(E.real))) & (E.real < emax)
    return np.sort(E[keep].real)


def discrete_spectrum(data, N=400, match_tol=1e-8):
    """Poles z_j = i sqrt(-E_j) on the upper imaginary axis, refined until
    stable under doubling N.  Returns (poles, report)."""
    u = data.u_initial
    L = max(data.L, 8.0)
    coarse = schrodinger_bound_states(u, L, N)
    fine = schrodinger_bound_states(u, L, 2 * N)
    accepted, rejected = [], []
    for E in fine:
        if coarse.size and np.min(np.abs(coarse - E)) < match_tol * max(1.0, abs(E)):
            accepted.append(E)
        else:
            rejected.append(E)
    accepted = np.asarray(accepted)
    poles = 1j * np.sqrt(-accepted) if accepted.size else np.zeros(0, dtype=complex)
    report = {"n_found": len(accepted), "rejected": [float(E) for E in rejected],
              "N": N, "L": float(L)}
    return poles, report


def _cauchy_derivative(f, z0, h, m=16):
    """f'(z0) by the Cauchy integral over a radius-h circle (f analytic)."""
    th = 2 * np.pi * np.arange(m) / m
    ring = z0 + h * np.exp(1j * th)
    vals = f(ring)
    return np.mean(vals * np.exp(-1j * th)) / h


def norming_constants(direct, poles, ring_frac=0.25):
    """(c(z_j), C(z_j)) for each pole, from the proportionality
    psi^p = b_j phi^m at z_j and the ring derivative of a."""
    c = direct.c
    poles = np.asarray(poles, dtype=complex)
    c_norm = np.zeros(poles.shape, dtype=complex)
    C_norm = np.zeros(poles.shape, dtype=complex)
    diag = []
    gaps = _pole_gaps(poles)
    for j, (zj, gap) in enumerate(zip(poles, gaps)):
        lft = direct.left([zj], channels="m")
        rgt = direct.right([lam(zj, c)], channels="p")
        psi_p, dpsi_p = rgt["psi_hat_p"][0], rgt["dpsi_hat_p"][0]
        phi_m, dphi_m = lft["phi_m"][0], lft["dphi_m"][0]
        b_val = psi_p / phi_m
        b_alt = dpsi_p / dphi_m
        h = ring_frac * gap

        da = _cauchy_derivative(direct.a_only, zj, h)
        if abs(da) < 1e-12:
            raise ValueError(f"pole {zj}: a'(z_j) too small (non-simple zero?)")
        lv = lam(zj, c)
        c_norm[j] = b_val / da
        C_norm[j] = lv / (b_val * da * zj)
        diag.append({"prop_consistency": abs(b_val - b_alt) / max(1.0, abs(b_val)),
                     "a_at_pole": abs(complex(direct.a_only(np.array([zj]))[0])),
                     "ring_radius": float(h)})
    return c_norm, C_norm, diag


def _pole_gaps(poles):
    """Safe ring radii: distance to the real axis and to other poles."""
    gaps = []
    for j, zj in enumerate(poles):
        g = zj.imag
        for k, zk in enumerate(poles):
            if k != j:
                g = min(g, abs(zj - zk))
        gaps.append(g)
    return gaps
