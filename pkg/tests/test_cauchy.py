import numpy as np
import pytest

from kdvist.contours import Piece, Contour, full_circle
from kdvist.cauchy import PieceOps, off_contour_eval, interval_cauchy
from kdvist.chebyshev import cheb_points


def _plemelj_gap(piece, rng):
    ops = PieceOps(piece)
    coeffs = rng.normal(size=min(10, piece.n))
    from kdvist.chebyshev import cheb_eval
    u = cheb_eval(coeffs, piece.taus).astype(complex)
    jump = ops.boundary_matrix("+") @ u - ops.boundary_matrix("-") @ u
    return np.abs(jump - u).max()


def test_plemelj_segment():
    rng = np.random.default_rng(0)
    p = Piece("segment", (-1.5 + 0.2j, 2.0 + 1.0j), n=24)
    assert _plemelj_gap(p, rng) < 1e-11


def test_plemelj_ray():
    rng = np.random.default_rng(1)
    p = Piece("ray", (0.5 + 0.1j, 1.0 + 0.3j), n=24)
    ops = PieceOps(p)
    # density vanishing at infinity: u = (1 - tau)*poly
    from kdvist.chebyshev import cheb_eval
    coeffs = rng.normal(size=8)
    u = ((1 - p.taus) * cheb_eval(coeffs, p.taus)).astype(complex)
    jump = ops.boundary_matrix("+") @ u - ops.boundary_matrix("-") @ u
    assert np.abs(jump - u).max() < 1e-11


def test_plemelj_arc():
    rng = np.random.default_rng(2)
    p = Piece("arc", (0.5j, 1.0, np.pi / 4, 3 * np.pi / 4), n=28)
    assert _plemelj_gap(p, rng) < 1e-10


def test_hardy_function_on_real_line():
    # f(s) = 1/(s-i) on R: C+f = 0, C-f = -f, and Cf(-i) = -i/2
    left = Piece("ray", (0.0, -1.0), n=80, orient=-1)   # from -oo to 0
    right = Piece("ray", (0.0, 1.0), n=80, orient=1)    # from 0 to +oo
    pieces = [left, right]
    ops = [PieceOps(p) for p in pieces]
    dens = np.concatenate([1.0 / (p.nodes - 1j) for p in pieces])[:, None]
    val = off_contour_eval(ops, dens, np.array([-1j]))
    assert abs(val[0, 0] - (-0.5j)) < 1e-9
    val_up = off_contour_eval(ops, dens, np.array([2j, 1 + 3j]))
    assert np.abs(val_up).max() < 1e-9

    # boundary values at the nodes of the right ray
    Cp = ops[1].boundary_matrix("+") @ dens[80:] \
        + ops[0].eval_matrix(pieces[1].nodes) @ dens[:80]
    f_right = dens[80:]
    assert np.abs(Cp).max() < 1e-8
    Cm = ops[1].boundary_matrix("-") @ dens[80:] \
        + ops[0].eval_matrix(pieces[1].nodes) @ dens[:80]
    assert np.abs(Cm + f_right).max() < 1e-8


def test_circle_cauchy():
    # density 1 on a counterclockwise circle: C = 1 inside, 0 outside
    pieces = full_circle(0.3 + 0.2j, 0.7, n_per_arc=24, clockwise=False)
    ops = [PieceOps(p) for p in pieces]
    dens = np.ones((sum(p.n for p in pieces), 1), dtype=complex)
    inside = off_contour_eval(ops, dens, np.array([0.3 + 0.2j, 0.5 + 0.1j]))
    outside = off_contour_eval(ops, dens, np.array([2.0, -1.5j]))
    assert np.abs(inside - 1.0).max() < 1e-10
    assert np.abs(outside).max() < 1e-10


def test_moment_weights_segment_and_arc():
    p = Piece("segment", (0.0, 2.0 + 1.0j), n=16)
    w = PieceOps(p).moment_weights()
    # int of s over the segment = (b^2-a^2)/2
    val = w @ p.nodes
    assert abs(val - (2.0 + 1.0j) ** 2 / 2) < 1e-12

    arc = Piece("arc", (0.0, 1.0, 0.0, np.pi / 2), n=20)
    w = PieceOps(arc).moment_weights()
    val = w @ np.ones(arc.n)          # int dz over quarter circle = i*e^{i0}(...)
    assert abs(val - (1j - 1.0)) < 1e-12


def test_moment_weights_ray():
    # u(s) = 1/(s+2)^2 on [0,oo): integral = 1/2
    p = Piece("ray", (0.0, 1.0), n=48)
    w = PieceOps(p).moment_weights()
    u = 1.0 / (p.nodes + 2.0) ** 2
    assert abs(w @ u - 0.5) < 1e-9


def test_mirror_pairing():
    p1 = Piece("segment", (0.5, 2.0), n=12)
    p2 = Piece("ray", (2.0, 1.0), n=10)
    p3 = Piece("arc", (1.0j, 0.3, 0.0, np.pi), n=8)
    pieces = [p1, p2, p3] + [p.mirror() for p in (p1, p2, p3)]
    cont = Contour(pieces, symmetric=True)
    pair = cont.node_pairing()
    nodes = cont.all_nodes()
    assert np.abs(nodes[pair] + nodes).max() < 1e-12


def test_eval_far_vs_near_consistency():
    rng = np.random.default_rng(3)
    p = Piece("segment", (-1.0, 1.0), n=40)
    ops = PieceOps(p)
    from kdvist.chebyshev import cheb_eval
    coeffs = rng.normal(size=12)
    u = cheb_eval(coeffs, p.taus).astype(complex)[:, None]
    # ring of points at increasing distance; exact value by adaptive quadrature
    from scipy.integrate import quad
    for z in [0.3 + 0.4j, 1.5 + 0.5j, 3.0 - 2.0j, 0.05 + 0.02j]:
        re = quad(lambda t: (cheb_eval(coeffs, t) / (t - z)).real, -1, 1, limit=200)[0]
        im = quad(lambda t: (cheb_eval(coeffs, t) / (t - z)).imag, -1, 1, limit=200)[0]
        exact = (re + 1j * im) / (2j * np.pi)
        got = (ops.eval_matrix(np.array([z])) @ u)[0, 0]
        assert abs(got - exact) < 1e-9, z
