import numpy as np
import pytest

from kdvist.contours import Piece, Contour
from kdvist.rhproblem import (RHProblem, PieceJump, solve_rhp,
                              symmetry_project, jump_residual, SIGMA1)


def _tri_up(entry):
    def M(s):
        n = len(s)
        out = np.broadcast_to(np.eye(2), (n, 2, 2)).copy().astype(complex)
        out[:, 0, 1] = entry(s)
        return out
    return M


def _tri_lo(entry):
    def P(s):
        n = len(s)
        out = np.broadcast_to(np.eye(2), (n, 2, 2)).copy().astype(complex)
        out[:, 1, 0] = entry(s)
        return out
    return P


def _real_line_pieces(n=72):
    return [Piece("ray", (0.0, -1.0), n=n, orient=-1),
            Piece("ray", (0.0, 1.0), n=n, orient=1)]


def test_identity_jump_gives_zero_density():
    pieces = _real_line_pieces(40)
    prob = RHProblem(Contour(pieces), [PieceJump(), PieceJump()],
                     symmetric_space=False)
    sol = solve_rhp(prob)
    assert np.abs(sol.density).max() < 1e-13
    assert sol.residual_norm < 1e-13


def _gaussian_jump_problem(symmetric):
    # J = M P^{-1} with M upper (entry -r(-s) e(s)), P lower-inverse style:
    # mimic the left-problem structure with r(s) = 0.3 exp(-s^2)(s+i)/(s-2i)
    def r(s):
        s = np.asarray(s, dtype=complex)
        return 0.3 * np.exp(-s * s) * (s + 1j) / (s - 2j)

    def eps(s):
        return np.exp(2j * s * 0.7)

    M = _tri_up(lambda s: -r(-np.asarray(s, complex)) * eps(np.asarray(s, complex)))
    Pinv_entry = lambda s: r(np.asarray(s, complex)) / eps(np.asarray(s, complex))
    P = _tri_lo(lambda s: -Pinv_entry(s))
    pieces = _real_line_pieces(64)
    jumps = [PieceJump(M=M, P=P), PieceJump(M=M, P=P)]
    return RHProblem(Contour(pieces), jumps, symmetric_space=symmetric)


def test_sigma1_pairing_of_test_problem():
    # M(s) = sigma1 P(-s) sigma1 for the conjugate-symmetric r above
    prob = _gaussian_jump_problem(False)
    s = np.array([0.3, -1.2, 2.0])
    Mv, Pv = prob.jumps[0].values(s)
    Mv2, Pv2 = prob.jumps[0].values(-s)
    gap = np.abs(Mv - SIGMA1 @ Pv2 @ SIGMA1).max()
    assert gap < 1e-14


def test_symmetric_solve_matches_full_solve():
    prob_f = _gaussian_jump_problem(False)
    prob_s = _gaussian_jump_problem(True)
    sol_f = solve_rhp(prob_f)
    sol_s = solve_rhp(prob_s)
    assert np.abs(sol_f.density - sol_s.density).max() < 1e-9
    mf = sol_f.first_moment()
    ms = sol_s.first_moment()
    assert np.abs(mf - ms).max() < 1e-10
    # the two moment entries are negatives of each other
    assert abs(ms[0] + ms[1]) < 1e-10


def test_density_symmetry_invariant():
    sol = solve_rhp(_gaussian_jump_problem(True))
    proj = symmetry_project(sol.density, sol.problem.contour)
    assert np.abs(proj - sol.density).max() < 1e-11
    # projection is idempotent
    again = symmetry_project(proj, sol.problem.contour)
    assert np.abs(again - proj).max() < 1e-13


def test_antisymmetric_class_killed_by_projection():
    prob = _gaussian_jump_problem(True)
    cont = prob.contour
    rng = np.random.default_rng(5)
    v = rng.normal(size=(cont.n_nodes, 2)) + 1j * rng.normal(size=(cont.n_nodes, 2))
    pair = cont.node_pairing()
    anti = 0.5 * (v + v[pair] @ SIGMA1)     # v(s) = v(-s) sigma1 class
    proj = symmetry_project(anti, cont)
    assert np.abs(proj).max() < 1e-12


def test_small_jump_neumann_term():
    # ||G-I|| = eps: density = [1 1](G-I) + O(eps^2)
    eps = 1e-4

    def entry(s):
        s = np.asarray(s, complex)
        return eps * np.exp(-2 * s * s)

    M = _tri_up(entry)
    pieces = _real_line_pieces(56)
    prob = RHProblem(Contour(pieces), [PieceJump(M=M), PieceJump(M=M)],
                     symmetric_space=False)
    sol = solve_rhp(prob)
    for i, p in enumerate(pieces):
        sl = prob.contour.piece_slices()[i]
        first = np.zeros((p.n, 2), dtype=complex)
        first[:, 1] = entry(p.nodes)     # [1 1] . (G-I), G-I upper triangular
        gap = np.abs(sol.density[sl] - first).max()
        assert gap < 5 * eps**2


def test_scalar_diagonal_jump_log_cauchy():
    # diag(T, 1/T) jump on the whole line: N = (Delta, 1/Delta) with
    # log Delta = C[log T]; compare at off-contour points
    def T(s):
        s = np.asarray(s, complex)
        return 1.0 + 0.5 * np.exp(-s * s)

    def Mdiag(s):
        n = len(s)
        out = np.zeros((n, 2, 2), dtype=complex)
        out[:, 0, 0] = T(s)
        out[:, 1, 1] = 1.0 / T(s)
        return out

    pieces = _real_line_pieces(72)
    prob = RHProblem(Contour(pieces), [PieceJump(M=Mdiag), PieceJump(M=Mdiag)],
                     symmetric_space=False)
    sol = solve_rhp(prob)
    from scipy.integrate import quad
    for z in [1j, -0.5 - 2j, 3 + 1j]:
        re = quad(lambda t: (np.log(T(t)) / (t - z)).real, -np.inf, np.inf)[0]
        im = quad(lambda t: (np.log(T(t)) / (t - z)).imag, -np.inf, np.inf)[0]
        logD = (re + 1j * im) / (2j * np.pi)
        Nv = sol.eval_N(np.array([z]))[0]
        assert abs(Nv[0] - np.exp(logD)) < 1e-8
        assert abs(Nv[1] - np.exp(-logD)) < 1e-8


def test_jump_residual_midpoints():
    prob = _gaussian_jump_problem(True)
    sol = solve_rhp(prob)
    assert jump_residual(prob, sol) < 1e-8


def test_condition_estimate_positive():
    sol = solve_rhp(_gaussian_jump_problem(True))
    assert sol.condition_estimate >= 1.0
