import numpy as np
import pytest

from kdvist.initial_data import make_initial_data
from kdvist.scattering import DirectScattering
from kdvist.spectrum import (schrodinger_bound_states, discrete_spectrum,
                             norming_constants)


def test_poschl_teller_well():
    # -psi'' - 2 sech^2(x) psi: single bound state E = -1 (z = i)
    E = schrodinger_bound_states(lambda x: 2.0 / np.cosh(x) ** 2, L=14.0, N=400)
    assert len(E) == 1
    assert abs(E[0] + 1.0) < 1e-8


def test_poschl_teller_two_levels():
    # -psi'' - 6 sech^2 psi: E = -4, -1
    E = schrodinger_bound_states(lambda x: 6.0 / np.cosh(x) ** 2, L=14.0, N=400)
    assert len(E) == 2
    assert abs(E[0] + 4.0) < 1e-8
    assert abs(E[1] + 1.0) < 1e-8


def test_pure_step_has_no_poles():
    data = make_initial_data("pure-step", c=1.0)
    poles, report = discrete_spectrum(data, N=300)
    assert poles.size == 0


def test_paper_example_pole_and_norming():
    # gaussian-bump data, c = 1: z1 ~ 0.950681i, c(z1) ~ 3.48119i,
    # C(z1) ~ 3.90351i
    data = make_initial_data("gaussian-bump", c=1.0)
    poles, report = discrete_spectrum(data, N=500)
    assert poles.size == 1
    z1 = poles[0]
    assert abs(z1 - 0.950681j) < 1e-4
    direct = DirectScattering(data)
    c_n, C_n, diag = norming_constants(direct, poles)
    assert abs(c_n[0] - 3.48119j) < 1e-3
    assert abs(C_n[0] - 3.90351j) < 1e-3
    # definitional identity c C a' A' = 1 holds by construction of C from
    # A' = a' z/lam; verify the proportionality consistency instead
    assert diag[0]["prop_consistency"] < 2e-5
    assert diag[0]["a_at_pole"] < 1e-6
