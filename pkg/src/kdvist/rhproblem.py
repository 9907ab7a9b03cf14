"""
Collocation solver for row-vector L2 Riemann-Hilbert problems

    N+(s) = N-(s) G(s),  N -> [1 1] at infinity,

via the singular integral equation u - C-u (G-I) = [1 1](G-I) with
N = [1 1] + C u, discretized in value space at mapped-Chebyshev nodes.

For symmetric problems (Gamma = -Gamma reversed, sigma1-paired factor
splits G = M P^{-1}) the equation is posed in split form

    u.P - C-u (M - P) = [1 1](M - P)

which maps the symmetric subspace L2_s = {u(s) = -u(-s) sigma1} to
itself; the solve is then folded onto half the nodes.

The x-derivative density solves the same system with right-hand side
(C-u + [1 1])(M_x - P_x) - u P_x, and u(x,t) is recovered from the first
moment -(1/2pi i) int u_x ds.
"""

import numpy as np
from dataclasses import dataclass, field
from scipy.linalg import lu_factor, lu_solve

from .cauchy import PieceOps, off_contour_eval
from .contours import Contour

SIGMA1 = np.array([[0.0, 1.0], [1.0, 0.0]])


@dataclass
class PieceJump:
    """Jump data on one piece: G = M P^{-1} with sigma1-paired splits.

    M, P: callables nodes -> (n,2,2); Mx, Px their x-derivatives (same
    shapes), zero if omitted.  det_ref: expected |det G| where the algebra
    pins it (1 for factor products, None to skip the check).
    """
    M: object = None
    P: object = None
    Mx: object = None
    Px: object = None
    det_ref: float = 1.0

    def values(self, s):
        n = len(s)
        eye = np.broadcast_to(np.eye(2), (n, 2, 2))
        Mv = self.M(s) if self.M is not None else eye.copy()
        Pv = self.P(s) if self.P is not None else eye.copy()
        return np.asarray(Mv, dtype=complex), np.asarray(Pv, dtype=complex)

    def xderivs(self, s):
        n = len(s)
        zero = np.zeros((n, 2, 2), dtype=complex)
        Mxv = self.Mx(s) if self.Mx is not None else zero
        Pxv = self.Px(s) if self.Px is not None else zero
        return np.asarray(Mxv, dtype=complex), np.asarray(Pxv, dtype=complex)


@dataclass
class RHProblem:
    contour: Contour
    jumps: list                  # PieceJump per piece
    symmetric_space: bool = True

    def jump_values(self, piece_idx, s):
        Mv, Pv = self.jumps[piece_idx].values(s)
        return Mv @ np.linalg.inv(Pv)


@dataclass
class RHSolution:
    problem: RHProblem
    density: np.ndarray          # (N, 2) values of u at all nodes
    density_x: np.ndarray = None
    residual_norm: float = 0.0
    condition_estimate: float = 0.0
    ops: list = None
    cminus: np.ndarray = None    # scalar C- matrix (N x N)
    diagnostics: dict = field(default_factory=dict)

    def first_moment(self, use_x=False):
        """-(1/2pi i) int_Gamma u ds, rowwise; a (2,) vector."""
        dens = self.density_x if use_x else self.density
        w = np.concatenate([op.moment_weights() for op in self.ops])
        return -(w @ dens) / (2j * np.pi)

    def eval_N(self, z):
        """[1 1] + C u at points off the contour."""
        z = np.asarray(z, dtype=complex).ravel()
        return np.array([1.0, 1.0])[None, :] + off_contour_eval(self.ops, self.density, z)


def _assemble_cminus(pieces):
    """Scalar C- matrix over all nodes, plus per-piece ops."""
    ops = [PieceOps(p) for p in pieces]
    slices = []
    k = 0
    for p in pieces:
        slices.append(slice(k, k + p.n))
        k += p.n
    N = k
    C = np.zeros((N, N), dtype=complex)
    for i, opi in enumerate(ops):
        C[slices[i], slices[i]] = opi.boundary_matrix("-")
        zi = opi.nodes
        for j, opj in enumerate(ops):
            if j != i:
                C[slices[i], slices[j]] = opj.eval_matrix(zi)
    return C, ops, slices


def _condest(lu_piv, A):
    """Cheap 1-norm condition estimate via a few inverse power iterations."""
    n = A.shape[0]
    rng = np.random.default_rng(0)
    x = rng.normal(size=n) + 1j * rng.normal(size=n)
    x /= np.abs(x).sum()
    est = 0.0
    for _ in range(3):
        y = lu_solve(lu_piv, x)
        ny = np.abs(y).sum()
        est = max(est, ny)
        x = y / ny
    norm_A = np.abs(A).sum(axis=0).max()
    return float(norm_A * est)


def solve_rhp(problem, want_x=False, jump_tol=1e-8):
    """Solve the collocated singular integral equation.

    Returns an RHSolution with the density (and its x-derivative when
    want_x), residual and condition diagnostics.
    """
    pieces = problem.contour.pieces
    C, ops, slices = _assemble_cminus(pieces)
    N = C.shape[0]

    Mv = np.empty((N, 2, 2), dtype=complex)
    Pv = np.empty((N, 2, 2), dtype=complex)
    for i, (p, pj) in enumerate(zip(pieces, problem.jumps)):
        s = p.nodes
        Mv[slices[i]], Pv[slices[i]] = pj.values(s)

    # A[(p,a),(q,b)] = P_p[b,a] delta - C[p,q] (M-P)_p[b,a]
    D = Mv - Pv
    A = np.zeros((2 * N, 2 * N), dtype=complex)
    # identity-side: block-diagonal right multiplication by P
    rows = np.arange(N)
    for a in range(2):
        for b in range(2):
            A[2 * rows + a, 2 * rows + b] += Pv[:, b, a]
            # C- coupling
            A[np.ix_(2 * rows + a, 2 * rows + b)] -= C * D[:, b, a][:, None]
    rhs = np.empty(2 * N, dtype=complex)
    rhs[0::2] = D[:, 0, 0] + D[:, 1, 0]
    rhs[1::2] = D[:, 0, 1] + D[:, 1, 1]

    fold = None
    if problem.symmetric_space and problem.contour.symmetric:
        pair = problem.contour.node_pairing()
        keep = np.nonzero(np.arange(N) < pair)[0]
        if 2 * keep.size != N:
            raise ValueError("node pairing failed to halve the system")
        # U_full = F U_half with u(-s) = -u(s) sigma1
        F = np.zeros((2 * N, 2 * keep.size), dtype=complex)
        for col, q in enumerate(keep):
            F[2 * q, 2 * col] = 1.0
            F[2 * q + 1, 2 * col + 1] = 1.0
            qm = pair[q]
            F[2 * qm, 2 * col + 1] = -1.0       # u_0(-s) = -u_1(s)
            F[2 * qm + 1, 2 * col] = -1.0       # u_1(-s) = -u_0(s)
        rows_keep = np.concatenate([[2 * q, 2 * q + 1] for q in keep])
        A_half = A[rows_keep][:, :] @ F
        rhs_half = rhs[rows_keep]
        lu_piv = lu_factor(A_half)
        x_half = lu_solve(lu_piv, rhs_half)
        # one step of iterative refinement
        r = rhs_half - A_half @ x_half
        x_half += lu_solve(lu_piv, r)
        x_full = F @ x_half
        cond = _condest(lu_piv, A_half)
        fold = (F, rows_keep, lu_piv)
        resid = np.abs(A @ x_full - rhs).max() / (1 + np.abs(rhs).max())
    else:
        lu_piv = lu_factor(A)
        x_full = lu_solve(lu_piv, rhs)
        r = rhs - A @ x_full
        x_full += lu_solve(lu_piv, r)
        cond = _condest(lu_piv, A)
        fold = (None, None, lu_piv)
        resid = np.abs(A @ x_full - rhs).max() / (1 + np.abs(rhs).max())

    U = x_full.reshape(N, 2)
    sol = RHSolution(problem=problem, density=U, residual_norm=float(resid),
                     condition_estimate=cond, ops=ops, cminus=C)
    sol.diagnostics["n_unknowns"] = 2 * N

    if want_x:
        sol.density_x = _solve_derivative(problem, sol, A, fold, slices)
    return sol


def _solve_derivative(problem, sol, A, fold, slices):
    """u_x P - C-u_x (M-P) = (C-u + [1 1])(M_x - P_x) - u P_x."""
    pieces = problem.contour.pieces
    N = sol.density.shape[0]
    CmU = sol.cminus @ sol.density + np.array([1.0, 1.0])[None, :]
    rhs = np.empty((N, 2), dtype=complex)
    for i, (p, pj) in enumerate(zip(pieces, problem.jumps)):
        s = p.nodes
        Mxv, Pxv = pj.xderivs(s)
        Dx = Mxv - Pxv
        sl = slices[i]
        rhs[sl] = np.einsum("nb,nba->na", CmU[sl], Dx) \
            - np.einsum("nb,nba->na", sol.density[sl], Pxv)
    rhs_vec = rhs.reshape(-1)
    F, rows_keep, lu_piv = fold
    if F is not None:
        x_half = lu_solve(lu_piv, rhs_vec[rows_keep])
        r = rhs_vec[rows_keep] - (A[rows_keep] @ F) @ x_half
        x_half += lu_solve(lu_piv, r)
        x_full = F @ x_half
    else:
        x_full = lu_solve(lu_piv, rhs_vec)
        x_full += lu_solve(lu_piv, rhs_vec - A @ x_full)
    return x_full.reshape(N, 2)


def symmetry_project(density, contour):
    """P u (s) = (u(s) - u(-s) sigma1)/2, the L2_s component."""
    pair = contour.node_pairing()
    mirrored = density[pair] @ SIGMA1
    return 0.5 * (density - mirrored)


def jump_residual(problem, sol, n_mid=7):
    """max over pieces of ||N+ - N- G|| at off-node points."""
    worst = 0.0
    pieces = problem.contour.pieces
    for i, (p, op) in enumerate(zip(pieces, sol.ops)):
        taus = np.linspace(-0.85, 0.85, n_mid)
        smid = p.M(taus)
        side_p = "+" if p.orient == 1 else "-"
        side_m = "-" if p.orient == 1 else "+"
        from .cauchy import interval_cauchy
        Bp = p.orient * (interval_cauchy(taus, p.n, side=side_p) @ op.v2c
                         + (np.ones((n_mid, 1)) * op._ray_row[None, :]
                            if op._ray_row is not None else 0.0))
        Bm = p.orient * (interval_cauchy(taus, p.n, side=side_m) @ op.v2c
                         + (np.ones((n_mid, 1)) * op._ray_row[None, :]
                            if op._ray_row is not None else 0.0))
        if p.kind == "arc":
            Bp = Bp + p.orient * op._smooth_correction(smid, taus)
            Bm = Bm + p.orient * op._smooth_correction(smid, taus)
        sl = problem.contour.piece_slices()[i]
        dens_i = sol.density[sl]
        Np = Bp @ dens_i
        Nm = Bm @ dens_i
        for j, opj in enumerate(sol.ops):
            if j != i:
                slj = problem.contour.piece_slices()[j]
                other = opj.eval_matrix(smid) @ sol.density[slj]
                Np += other
                Nm += other
        Np += np.array([1.0, 1.0])[None, :]
        Nm += np.array([1.0, 1.0])[None, :]
        Mv, Pv = problem.jumps[i].values(smid)
        G = Mv @ np.linalg.inv(Pv)
        gap = np.abs(Np - np.einsum("nb,nba->na", Nm, G)).max()
        worst = max(worst, float(gap))
    return worst
