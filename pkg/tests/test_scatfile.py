import numpy as np
import pytest

from kdvist.initial_data import make_initial_data
from kdvist.scattering import build_scattering_data
from kdvist.scatfile import save_scattering, load_scattering


def test_pure_step_roundtrip(tmp_path):
    sd = build_scattering_data(make_initial_data("pure-step", c=np.sqrt(2.0)))
    path = tmp_path / "step.json"
    save_scattering(sd, path)
    sd2 = load_scattering(path)
    assert sd2.is_pure_step
    s = np.array([1.9, 2.4, -3.0])
    assert np.allclose(sd2.Rl(s), sd.Rl(s), atol=1e-15)
    assert sd2.kappa1 == sd.kappa1


def test_tables_roundtrip(tmp_path):
    data = make_initial_data("erf-squared", c=1.0)
    sd = build_scattering_data(data, n_sqrt=32, n_wide=48, spectrum_N=200)
    path = tmp_path / "erf.json"
    save_scattering(sd, path)
    sd2 = load_scattering(path)
    zs = np.array([1.5 + 0.05j, -2.0 + 0.1j, 0.3 + 0.0j, 3.7 + 0.0j])
    assert np.allclose(sd2.Rl(zs), sd.Rl(zs), atol=0)
    off = np.array([1.5, -2.5])
    assert np.allclose(sd2.Rr(off), sd.Rr(off), atol=0)
    cutpts = np.array([-0.4 + 0j, 0.6 + 0j])
    assert np.allclose(sd2.Rr_cut(cutpts), sd.Rr_cut(cutpts), atol=0)
    assert np.allclose(sd2.F_cut(cutpts), sd.F_cut(cutpts), atol=0)
    assert sd2.generic == sd.generic
    assert sd2.poles.shape == sd.poles.shape


def test_rejects_foreign_file(tmp_path):
    p = tmp_path / "junk.json"
    p.write_text('{"format": "something-else"}')
    with pytest.raises(ValueError):
        load_scattering(p)
