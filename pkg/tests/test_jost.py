import numpy as np
import pytest

from kdvist.initial_data import make_initial_data
from kdvist.jost import solve_jost, solve_jost_left, solve_jost_right, shooting_oracle


@pytest.fixture(scope="module")
def bump_data():
    return make_initial_data("gaussian-bump", c=1.0)


def test_pure_step_left_is_trivial():
    data = make_initial_data("pure-step", c=1.0)
    jv = solve_jost(data, 0.7 + 0.2j, side="left")
    z = 0.7 + 0.2j
    assert abs(jv.phi_m - 1.0) < 1e-12
    assert abs(jv.dphi_m + 1j * z) < 1e-12
    assert abs(jv.phi_p - 1.0) < 1e-12
    assert abs(jv.dphi_p - 1j * z) < 1e-12


def test_pure_step_right_is_trivial():
    data = make_initial_data("pure-step", c=1.0)
    mu = 1.3
    jv = solve_jost(data, mu, side="right")
    assert abs(jv.psi_hat_p - 1.0) < 1e-12
    assert abs(jv.dpsi_hat_p - 1j * mu) < 1e-12
    assert abs(jv.psi_hat_m - 1.0) < 1e-12
    assert abs(jv.dpsi_hat_m + 1j * mu) < 1e-12


def test_wronskian_normalization(bump_data):
    for z in [0.5, 1.7, 1.0 + 0.0j, 2.5]:
        out = solve_jost_left(bump_data, [z])
        W = out["phi_p"][0] * out["dphi_m"][0] - out["phi_m"][0] * out["dphi_p"][0]
        assert abs(W + 2j * z) < 1e-9 * max(1.0, abs(z))


def test_left_jost_matches_shooting_oracle(bump_data):
    z = 1.0
    out = solve_jost_left(bump_data, [z])
    orc = shooting_oracle(bump_data, z, side="left")
    psi_p, dpsi_p = orc["p"]
    psi_m, dpsi_m = orc["m"]
    x0 = -bump_data.L
    assert abs(out["phi_p"][0] - psi_p) < 1e-8
    assert abs(out["dphi_p"][0] - dpsi_p) < 1e-8
    assert abs(out["phi_m"][0] - psi_m) < 1e-8
    assert abs(out["dphi_m"][0] - dpsi_m) < 1e-8


def test_right_jost_matches_shooting_oracle(bump_data):
    mu = 1.4
    out = solve_jost_right(bump_data, [mu])
    orc = shooting_oracle(bump_data, mu, side="right")
    psi_p, dpsi_p = orc["p"]
    psi_m, dpsi_m = orc["m"]
    assert abs(out["psi_hat_p"][0] - psi_p) < 1e-8
    assert abs(out["dpsi_hat_p"][0] - dpsi_p) < 1e-8
    assert abs(out["psi_hat_m"][0] - psi_m) < 1e-8
    assert abs(out["dpsi_hat_m"][0] - dpsi_m) < 1e-8


def test_box_breakpoints_respected():
    data = make_initial_data("box", c=1.0, height=0.8, x0=-2.0, x1=-0.5)
    z = 1.2
    out = solve_jost_left(data, [z])
    orc = shooting_oracle(data, z, side="left")
    assert abs(out["phi_p"][0] - orc["p"][0]) < 1e-8
    assert abs(out["phi_m"][0] - orc["m"][0]) < 1e-8
