"""
Versioned JSON persistence for ScatteringData.

The file stores discrete data (poles, norming constants, matching
coefficients), the genericity report, and — for non-closed-form data —
every interpolant panel as (geometry, coefficient) records.  Loading
reconstructs evaluators bit-for-bit.
"""

import json
import numpy as np

from .interpolants import SqrtPanel, OverlapFamily, StripEvaluator, CutEvaluator
from .scattering import ScatteringData, PureStepScattering

FORMAT_TAG = "kdvist-scattering/1"


def _carr(v):
    v = np.asarray(v, dtype=complex).ravel()
    return [[float(x.real), float(x.imag)] for x in v]


def _unarr(lst):
    return np.array([complex(re, im) for re, im in lst], dtype=complex)


def _c(x):
    x = complex(x)
    return [x.real, x.imag]


def _unc(pair):
    return complex(pair[0], pair[1])


def _dump_part(part):
    if part is None:
        return None
    if isinstance(part, SqrtPanel):
        return {"kind": "sqrt", "edge": part.edge, "sign": part.sign,
                "width": part.width, "coeffs": _carr(part.coeffs)}
    if isinstance(part, OverlapFamily):
        return {"kind": "overlap", "centers": list(map(float, part.centers)),
                "halfwidth": part.halfwidth, "height": part.height,
                "rows": [_carr(r) for r in part.coeff_rows]}
    raise TypeError(type(part))


def _load_part(rec):
    if rec is None:
        return None
    if rec["kind"] == "sqrt":
        return SqrtPanel(rec["edge"], rec["sign"], rec["width"], _unarr(rec["coeffs"]))
    if rec["kind"] == "overlap":
        return OverlapFamily(np.asarray(rec["centers"]), rec["halfwidth"],
                             [_unarr(r) for r in rec["rows"]], rec["height"])
    raise ValueError(rec["kind"])


_STRIP_PARTS = ("sqrt_out_p", "sqrt_out_m", "sqrt_in_p", "sqrt_in_m",
                "wide_left", "wide_right", "wide_cut", "line")


def _dump_strip(ev):
    if ev is None:
        return None
    return {"c": ev.c, "S": ev.S, "tail": _c(ev.tail), "seam_frac": ev.seam_frac,
            "line_band": ev.line_band,
            **{k: _dump_part(getattr(ev, k)) for k in _STRIP_PARTS}}


def _load_strip(rec):
    if rec is None:
        return None
    return StripEvaluator(c=rec["c"], S=rec["S"], tail=_unc(rec["tail"]),
                          seam_frac=rec["seam_frac"], line_band=rec["line_band"],
                          **{k: _load_part(rec[k]) for k in _STRIP_PARTS})


def _dump_cut(ev):
    if ev is None:
        return None
    return {"c": ev.c, "seam_frac": ev.seam_frac,
            "sqrt_in_p": _dump_part(ev.sqrt_in_p),
            "sqrt_in_m": _dump_part(ev.sqrt_in_m),
            "wide_cut": _dump_part(ev.wide_cut)}


def _load_cut(rec):
    if rec is None:
        return None
    return CutEvaluator(c=rec["c"], seam_frac=rec["seam_frac"],
                        sqrt_in_p=_load_part(rec["sqrt_in_p"]),
                        sqrt_in_m=_load_part(rec["sqrt_in_m"]),
                        wide_cut=_load_part(rec["wide_cut"]))


def save_scattering(sd, path):
    doc = {
        "format": FORMAT_TAG,
        "c": sd.c, "nu": sd.nu, "L": sd.L,
        "family": sd.family, "params": sd.params,
        "poles": _carr(sd.poles),
        "c_norm": _carr(sd.c_norm),
        "C_norm": _carr(sd.C_norm),
        "matching": {"kappa1": _c(sd.kappa1), "kappa2": _c(sd.kappa2),
                     "gamma": _c(sd.gamma), "alpha": _c(sd.alpha_match),
                     "beta": _c(sd.beta_match)},
        "generic": bool(sd.generic),
        "diagnostics": _jsonable(sd.diagnostics),
        "strip_height": sd.strip_height,
        "lens_height": sd.lens_height,
        "S": sd.S,
        "u0_integral": sd.u0_integral,
        "closed_form": sd.is_pure_step,
    }
    if not sd.is_pure_step:
        doc["tables"] = {
            "rl": _dump_strip(sd.rl_ip), "rr": _dump_strip(sd.rr_ip),
            "a": _dump_strip(sd.a_ip), "b": _dump_strip(sd.b_ip),
            "A": _dump_strip(sd.A_ip), "B": _dump_strip(sd.B_ip),
            "rr_cut": _dump_cut(sd.rrcut_ip), "f_cut": _dump_cut(sd.fcut_ip),
        }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh)
    return path


def load_scattering(path):
    with open(path, encoding="utf-8") as fh:
        doc = json.load(fh)
    if doc.get("format") != FORMAT_TAG:
        raise ValueError(f"not a scattering file (format tag {doc.get('format')!r})")
    m = doc["matching"]
    sd = ScatteringData(
        c=doc["c"], nu=doc["nu"], L=doc["L"], family=doc["family"],
        params=doc.get("params", {}),
        poles=_unarr(doc["poles"]), c_norm=_unarr(doc["c_norm"]),
        C_norm=_unarr(doc["C_norm"]),
        kappa1=_unc(m["kappa1"]), kappa2=_unc(m["kappa2"]), gamma=_unc(m["gamma"]),
        alpha_match=_unc(m["alpha"]), beta_match=_unc(m["beta"]),
        generic=doc["generic"], diagnostics=doc.get("diagnostics", {}),
        strip_height=doc["strip_height"], lens_height=doc.get("lens_height", 0.15),
        S=doc["S"], u0_integral=doc.get("u0_integral", 0.0))
    if doc.get("closed_form"):
        sd.pure = PureStepScattering(sd.c)
    else:
        t = doc["tables"]
        sd.rl_ip = _load_strip(t["rl"])
        sd.rr_ip = _load_strip(t["rr"])
        sd.a_ip = _load_strip(t["a"])
        sd.b_ip = _load_strip(t["b"])
        sd.A_ip = _load_strip(t["A"])
        sd.B_ip = _load_strip(t["B"])
        sd.rrcut_ip = _load_cut(t["rr_cut"])
        sd.fcut_ip = _load_cut(t["f_cut"])
    return sd


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, complex):
        return {"re": obj.real, "im": obj.imag}
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, np.complexfloating):
        return {"re": float(obj.real), "im": float(obj.imag)}
    if isinstance(obj, np.ndarray):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (bool, int, float, str)) or obj is None:
        return obj
    return repr(obj)
