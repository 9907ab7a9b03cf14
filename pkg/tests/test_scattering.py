import numpy as np
import pytest

from kdvist.branches import lam, lam_cont
from kdvist.initial_data import make_initial_data
from kdvist.scattering import (DirectScattering, PureStepScattering,
                               cut_matching_data, rr_cut_formula,
                               genericity_check, time_phases,
                               build_scattering_data)


@pytest.fixture(scope="module")
def step_direct():
    return DirectScattering(make_initial_data("pure-step", c=1.0))


@pytest.fixture(scope="module")
def erf_direct():
    return DirectScattering(make_initial_data("erf-squared", c=1.0))


def _closed_forms(z, c):
    lv = lam(z, c, "+")
    return ((z + lv) / (2 * z), (z - lv) / (2 * z),
            0.5 * (1 + z / lv), 0.5 * (1 - z / lv))


def test_pure_step_coefficients_match_closed_forms(step_direct):
    rng = np.random.default_rng(42)
    zs = np.concatenate([rng.uniform(1.05, 6.0, 25), -rng.uniform(1.05, 6.0, 25)])
    a, b, A, B = step_direct.abAB(zs)
    ae, be, Ae, Be = _closed_forms(zs.astype(complex), 1.0)
    assert np.max(np.abs(a - ae)) < 1e-8
    assert np.max(np.abs(b - be)) < 1e-8
    assert np.max(np.abs(A - Ae)) < 1e-8
    assert np.max(np.abs(B - Be)) < 1e-8


def test_pure_step_example_values(step_direct):
    a, b, A, B = step_direct.abAB(np.array([1.5]))
    lv = np.sqrt(1.5**2 - 1)
    assert abs(a[0] - (1.5 + lv) / 3.0) < 1e-10
    assert abs(b[0] - (1.5 - lv) / 3.0) < 1e-10
    rl = b[0] / a[0]
    assert abs(rl - 0.1458980) < 1e-7
    rr = step_direct.rr_offcut(np.array([1.5]))[0]
    assert abs(rr + 0.1458980) < 1e-7


def test_free_operator_limit():
    # c small, u0 = 0: a ~ 1, b ~ 0 away from the tiny cut
    d = DirectScattering(make_initial_data("pure-step", c=1e-4))
    a, b, _, _ = d.abAB(np.array([1.0, -2.0, 3.3]))
    assert np.max(np.abs(a - 1)) < 1e-7
    assert np.max(np.abs(b)) < 1e-7


def test_rl_on_cut_closed_form(step_direct):
    s = 1 / np.sqrt(2.0)
    rl = step_direct.rl_oncut(np.array([s]))[0]
    expect = (s - 1j * np.sqrt(1 - s * s)) / (s + 1j * np.sqrt(1 - s * s))
    assert abs(rl - expect) < 1e-9
    assert abs(rl + 1j) < 1e-9


def test_rl_at_zero_is_minus_one(step_direct, erf_direct):
    for d in (step_direct, erf_direct):
        rl0 = d.rl_oncut(np.array([0.0]))[0]
        assert abs(rl0 + 1.0) < 1e-7


def test_rl_unimodular_on_cut(erf_direct):
    s = np.linspace(-0.95, 0.95, 9)
    rl = d_vals = erf_direct.rl_oncut(s)
    assert np.max(np.abs(np.abs(rl) - 1.0)) < 1e-8


def test_conjugation_symmetry(erf_direct):
    s = np.array([1.3, 2.1, 3.5])
    a, b, _, _ = erf_direct.abAB(s)
    am, bm, _, _ = erf_direct.abAB(-s)
    assert np.max(np.abs(np.conj(a) - am)) < 1e-9
    assert np.max(np.abs(np.conj(b) - bm)) < 1e-9


def test_transl_identity(erf_direct):
    # A(z) a(-z) (1 - R_l(z) R_l(-z)) = 1 on the real line off the cut
    s = np.array([1.2, 1.8, 2.7, -1.4, -3.1])
    a, b, A, B = erf_direct.abAB(s)
    am, bm, _, _ = erf_direct.abAB(-s)
    rl, rlm = b / a, bm / am
    assert np.max(np.abs(A * am * (1 - rl * rlm) - 1)) < 1e-8


def test_btob_identity(erf_direct):
    s = np.array([1.2, 2.3, -1.7, 4.0])
    _, _, _, B = erf_direct.abAB(s)
    _, bm, _, _ = erf_direct.abAB(-s)
    lv = lam(s.astype(complex), 1.0)
    assert np.max(np.abs(B + bm * s / lv)) < 1e-8


def test_a_equals_A_relation(erf_direct):
    s = np.array([1.5, -2.5, 3.0])
    a, _, A, _ = erf_direct.abAB(s)
    lv = lam(s.astype(complex), 1.0)
    assert np.max(np.abs(A - a * s / lv)) < 1e-10


def test_a_large_z_asymptotics(erf_direct):
    # 2iz(a(z)-1) -> int u0 along the imaginary axis
    from scipy.integrate import quad
    data = erf_direct.data
    I_u = quad(lambda x: float(data.u0(np.array([x]))[0]), -data.L, data.L,
               points=[0.0], limit=200)[0]
    vals = []
    for y in [40.0, 80.0]:
        a = erf_direct.a_only(np.array([1j * y]))
        vals.append(complex(2j * 1j * y * (a[0] - 1)))
    # Richardson in 1/y
    extrap = 2 * vals[1] - vals[0]
    assert abs(extrap - I_u) < 1e-4


def test_reflection_decay(erf_direct):
    s = np.array([3.0, 5.0, 8.0])
    rl = erf_direct.rl(s)
    assert np.all(np.abs(rl) * s**2 < 10.0)
    assert np.abs(rl[-1]) < np.abs(rl[0])


def test_cut_matching_pure_step(step_direct):
    c = 1.0
    k1, k2, g, al, be, diag = cut_matching_data(step_direct)
    pure = PureStepScattering(c)
    k1e, k2e, ge, ale, bee = pure.matching()
    assert abs(k1 - k1e) < 1e-6
    assert abs(k2 - k2e) < 2e-5
    assert abs(g - ge) < 1e-6
    assert abs(al - ale) < 1e-6
    assert abs(be - bee) < 2e-5
    assert diag["lemma_gap"] < 1e-6


def test_matching_lemma_erf(erf_direct):
    k1, k2, g, al, be, diag = cut_matching_data(erf_direct)
    # -i gamma - kappa1 = i conj(gamma)
    assert diag["lemma_gap"] < 1e-5


def test_claim_identity_on_cut(erf_direct):
    # R_r(s) - R_r(-s) = 1/(a+(-s) A+(s)) holds for the matched extension
    k1, k2, g, al, be, _ = cut_matching_data(erf_direct)
    s = np.array([-0.6, -0.25, 0.31, 0.74])
    F = erf_direct.f_cut(s)
    Fm = erf_direct.f_cut(-s)
    rr = rr_cut_formula(s, 1.0, al, be, F)
    rrm = rr_cut_formula(-s, 1.0, al, be, Fm)
    assert np.max(np.abs((rr - rrm) - F)) < 1e-6


def test_rr_cut_endpoint_values(erf_direct):
    k1, k2, g, al, be, _ = cut_matching_data(erf_direct)
    for s_end in (-0.9999, 0.9999):
        s = np.array([s_end])
        rr = rr_cut_formula(s, 1.0, al, be, erf_direct.f_cut(s))
        assert abs(rr[0] + 1.0) < 5e-2   # -1 + O(sqrt(|s -+ c|))


def test_pure_step_rr_cut_closed_form(step_direct):
    pure = PureStepScattering(1.0)
    s = np.linspace(-0.9, 0.9, 7)
    expect = (-s**2 + 2j * s * np.sqrt(1 - s**2))
    assert np.max(np.abs(pure.rr_cut(s) - expect)) < 1e-12
    # values at the edge
    assert abs(pure.rr_cut(np.array([1.0]))[0] + 1.0) < 1e-10


def test_genericity(step_direct, erf_direct):
    ok1, d1 = genericity_check(step_direct)
    ok2, d2 = genericity_check(erf_direct)
    assert ok1 and ok2


def test_time_phases():
    ph = time_phases(1.0, x=0.0, t=1.0, s=np.array([1.0]))
    assert abs(ph["left"][0] - np.exp(-8j)) < 1e-14
    assert abs(abs(ph["left"][0]) - 1.0) < 1e-14
    ph0 = time_phases(1.0, x=0.5, t=0.0, s=np.array([2.0]))
    assert abs(ph0["left"][0] - np.exp(-2j)) < 1e-14
