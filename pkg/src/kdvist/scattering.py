"""
Scattering data for the Schrodinger operator with step-like potential.

All coefficients come from Wronskians of Jost solutions evaluated at x=0:

    a(z) = W(phi^m, psi^p)/(2iz)         A(z) = a(z) z/lam(z)
    b(z) = -W(phi^p, psi^p)/(2iz)        B(z) = W(psi^m, phi^m)/(2i lam)

with psi^{p,m}(z;x) = psihat^{p,m}(lam(z);x).  Reflection coefficients:

    R_l(s) = b/a for s^2 > c^2,   a+(-s)/a+(s) on [-c,c]
    R_r(s) = B/A for s^2 > c^2,   matched-extension formula on [-c,c]

The on-cut boundary values use the branch continuation Lambda(z) =
i sqrt(c-z) sqrt(c+z) of lam_plus, so a+(s) is computed directly (no
limits): ahat(z) = W(phi^m(z), psihat^p(Lambda(z)) e^{i Lambda x})/(2iz).

The matched extension of R_r on the cut is

    R_r(s) = (1/2 + ell(s)/(s sqrt(c^2-s^2))) / (a+(-s) A+(s)),
    ell(s) = alpha s^2 + beta sqrt(c^2-s^2),

with alpha, beta fixed by the expansion data (kappa1, kappa2, gamma) at
s = -c so that R_r(-c) = -1 and the sqrt-coefficients match across -c.
"""

import numpy as np
from dataclasses import dataclass, field

from .branches import lam, lam_cont
from .jost import solve_jost_left, solve_jost_right
from .interpolants import CutEvaluator, build_strip_evaluator


def _wronsk(f, df, g, dg):
    return f * dg - g * df


# ---------------------------------------------------------------------------
# direct (Jost-backed) evaluations


class DirectScattering:
    """Wronskian evaluations straight from the ODE solver.  Slow per point;
    used to build tables, for oracles, and for endpoint fits."""

    def __init__(self, data, rtol=2e-13, atol=1e-14):
        self.data = data
        self.c = data.c
        self.rtol = rtol
        self.atol = atol
        # side-specific truncation keeps the dominant-mode error ~e^{2 Im(mu) L}
        # small when evaluating hatted functions on the upper imaginary axis
        self.L_left = self._effective_L(lambda x: data.ul(-x))
        self.L_right = self._effective_L(lambda x: data.ur(x))

    def _effective_L(self, decay_side, tol=1e-15):
        x = np.linspace(1.0, self.data.L, 400)
        v = np.abs(decay_side(x))
        idx = np.nonzero(v > tol)[0]
        return float(min(self.data.L, (x[idx[-1]] + 0.25) if idx.size else 1.0))

    def left(self, zs, channels="mp"):
        return solve_jost_left(self.data, zs, self.rtol, self.atol,
                               L=self.L_left, channels=channels)

    def right(self, mus, channels="pm"):
        return solve_jost_right(self.data, mus, self.rtol, self.atol,
                                L=self.L_right, channels=channels)

    def a_only(self, zs):
        """a(z) via the two stable channels; valid high in the upper
        half-plane where the p/m partner channels would overflow."""
        zs = np.asarray(zs, dtype=complex).ravel()
        lv = lam(zs, self.c)
        lft = self.left(zs, channels="m")
        rgt = self.right(lv, channels="p")
        return _wronsk(lft["phi_m"], lft["dphi_m"],
                       rgt["psi_hat_p"], rgt["dpsi_hat_p"]) / (2j * zs)

    def abAB(self, zs):
        """(a, b, A, B) for real z with z^2 > c^2, or (a, A) valid for
        Im z > 0 (b, B returned but meaningful on the real line)."""
        zs = np.asarray(zs, dtype=complex).ravel()
        if np.any(zs == 0):
            raise ValueError("scattering coefficients are singular at z = 0")
        lv = lam(zs, self.c)
        lft = self.left(zs)
        rgt = self.right(lv)
        psi_p = rgt["psi_hat_p"]
        dpsi_p = rgt["dpsi_hat_p"]
        psi_m = rgt["psi_hat_m"]
        dpsi_m = rgt["dpsi_hat_m"]
        a = _wronsk(lft["phi_m"], lft["dphi_m"], psi_p, dpsi_p) / (2j * zs)
        b = -_wronsk(lft["phi_p"], lft["dphi_p"], psi_p, dpsi_p) / (2j * zs)
        A = a * zs / lv
        B = _wronsk(psi_m, dpsi_m, lft["phi_m"], lft["dphi_m"]) / (2j * lv)
        return a, b, A, B

    def ahat_wronsk(self, zs):
        """W(phi^m(z), psi_Lambda^p(z)) where psi uses the Lambda branch.
        Equals 2iz a+(z) on the cut; analytic across the open cut."""
        zs = np.asarray(zs, dtype=complex).ravel()
        Lv = lam_cont(zs, self.c)
        lft = self.left(zs)
        rgt = self.right(Lv)
        return _wronsk(lft["phi_m"], lft["dphi_m"], rgt["psi_hat_p"], rgt["dpsi_hat_p"])

    def a_plus(self, s):
        """Boundary value of a from above, on or off the cut."""
        s = np.asarray(s, dtype=complex).ravel()
        return self.ahat_wronsk(s) / (2j * s)

    def rl_oncut(self, s):
        """a+(-s)/a+(s) computed from Wronskians (no 1/s cancellation)."""
        s = np.asarray(s, dtype=float).ravel()
        w_p = self.ahat_wronsk(s)
        w_m = self.ahat_wronsk(-s)
        return -w_m / w_p

    def f_cut(self, s):
        """F(s) = 1/(a+(-s) A+(s)) = 4 s lam_plus(s) / (W(s) W(-s))."""
        s = np.asarray(s, dtype=complex).ravel()
        w_p = self.ahat_wronsk(s)
        w_m = self.ahat_wronsk(-s)
        return 4.0 * s * lam_cont(s, self.c) / (w_p * w_m)

    def rl(self, s):
        """R_l on the real line (both pieces) or in the upper strip, where
        it is the single meromorphic function b/a."""
        s = np.asarray(s, dtype=complex).ravel()
        out = np.empty(s.shape, dtype=complex)
        cut = (s.imag == 0) & (np.abs(s.real) <= self.c)
        if np.any(~cut):
            a, b, _, _ = self.abAB(s[~cut])
            out[~cut] = b / a
        if np.any(cut):
            out[cut] = self.rl_oncut(s[cut].real)
        return out

    def rr_offcut(self, s):
        s = np.asarray(s, dtype=complex).ravel()
        a, b, A, B = self.abAB(s)
        return B / A


# ---------------------------------------------------------------------------
# cut matching


def sqrt_expansion_coeffs(f, edge, sign, width, n=28):
    """First two coefficients of f(edge + sign*w^2) = f0 + f1 w + f2 w^2 + ..
    via Chebyshev interpolation in the square-root variable w on [0,
    sqrt(width)] and endpoint derivatives at w = 0."""
    from .chebyshev import cheb_points, vals_to_coeffs, endpoint_derivatives
    wmax = np.sqrt(width)
    w = 0.5 * wmax * (cheb_points(n) + 1.0)
    vals = f(edge + sign * w * w)
    coeffs = vals_to_coeffs(vals)
    p0, p1, p2 = endpoint_derivatives(coeffs, at=-1.0)
    scale = 2.0 / wmax
    return p0, p1 * scale, 0.5 * p2 * scale**2, coeffs


def cut_matching_data(direct, width=None, n=28):
    """Expansion data (kappa1, kappa2, gamma, alpha, beta) near s = -c.

    kappa1, kappa2:  1/(a+(-s)A+(s)) = kappa1 sqrt(s+c) + kappa2 (s+c) + ...
    gamma:           R_r(s) = -1 + gamma sqrt(-s-c) + O(|s+c|), s < -c
    alpha, beta:     ell(s) = alpha s^2 + beta sqrt(c^2-s^2) with
                     kappa1 alpha sqrt(c/2) = 1 and
                     kappa1/2 - kappa1 beta/c - kappa2/kappa1 = -i gamma.
    """
    c = direct.c
    width = width if width is not None else 0.25 * c

    F0, kappa1, kappa2, coeffs_F = sqrt_expansion_coeffs(
        direct.f_cut, edge=-c, sign=+1.0, width=width, n=n)
    R0, gamma, _, coeffs_R = sqrt_expansion_coeffs(
        direct.rr_offcut, edge=-c, sign=-1.0, width=width, n=n)

    if abs(kappa1) < 1e-10:
        raise ValueError("non-generic data: kappa1 vanishes")
    alpha = np.sqrt(2.0) / (kappa1 * np.sqrt(c))
    beta = (c / kappa1) * (kappa1 / 2.0 - kappa2 / kappa1 + 1j * gamma)
    diag = {
        "F_at_edge": abs(complex(F0)),
        "Rr_edge_gap": abs(complex(R0) + 1.0),
        "lemma_gap": float(abs(-1j * gamma - kappa1 - 1j * np.conj(gamma))),
    }
    return complex(kappa1), complex(kappa2), complex(gamma), complex(alpha), complex(beta), diag


def rr_cut_formula(s, c, alpha, beta, f_vals):
    """Matched on-cut R_r from ell(s) and precomputed F(s) values.

    Off the real axis the same expression continues analytically with
    sqrt(c^2-s^2) -> -i Lambda(s); f_vals must then be the continued F.
    """
    s = np.asarray(s, dtype=complex)
    root = -1j * lam_cont(s, c)
    ell = alpha * s * s + beta * root
    return (0.5 + ell / (s * root)) * f_vals


# ---------------------------------------------------------------------------
# pure-step closed forms


class PureStepScattering:
    """Closed forms for u0 = 0 (from the zero-potential Jost solutions):
    a = (z+lam)/(2z), b = (z-lam)/(2z), A = (1+z/lam)/2, B = (1-z/lam)/2.

    With the '+' side convention, R_l = b/a = (z-lam)/(z+lam) is the
    upper-half-plane meromorphic function whose boundary values give both
    the off-cut ratio and the on-cut a+(-s)/a+(s)."""

    def __init__(self, c):
        self.c = float(c)

    def a(self, z):
        z = np.asarray(z, dtype=complex)
        return (z + lam(z, self.c, "+")) / (2 * z)

    def b(self, z):
        z = np.asarray(z, dtype=complex)
        return (z - lam(z, self.c, "+")) / (2 * z)

    def A(self, z):
        z = np.asarray(z, dtype=complex)
        lv = lam(z, self.c, "+")
        return 0.5 * (1 + z / lv)

    def B(self, z):
        z = np.asarray(z, dtype=complex)
        lv = lam(z, self.c, "+")
        return 0.5 * (1 - z / lv)

    def a_plus(self, z):
        z = np.asarray(z, dtype=complex)
        return (z + lam_cont(z, self.c)) / (2 * z)

    def rl(self, z):
        z = np.asarray(z, dtype=complex)
        lv = lam(z, self.c, "+")
        return (z - lv) / (z + lv)

    def rr_offcut(self, z):
        z = np.asarray(z, dtype=complex)
        lv = lam(z, self.c, "+")
        return (lv - z) / (lv + z)

    def f_cut(self, s):
        s = np.asarray(s, dtype=complex)
        return 4.0 * s * lam_cont(s, self.c) / self.c**2

    def matching(self):
        c = self.c
        kappa1 = -4j * np.sqrt(2 * c) / c
        kappa2 = 0.0 + 0j
        gamma = 2.0 * np.sqrt(2.0 / c) + 0j
        alpha = 0.25j
        beta = 0.0 + 0j
        return kappa1, kappa2, gamma, alpha, beta

    def rr_cut(self, s):
        """Matched cut extension; for the pure step this reduces to
        -s^2/c^2 + 2 i s sqrt(c^2 - s^2)/c^2 (continued via Lambda)."""
        s = np.asarray(s, dtype=complex)
        root = -1j * lam_cont(s, self.c)
        return (-s * s + 2j * s * root) / self.c**2


# ---------------------------------------------------------------------------
# assembled scattering data


@dataclass
class ScatteringData:
    """Evaluators for everything the RH stage needs, plus discrete data.

    For the pure step all evaluators are closed forms.  Otherwise they are
    panelized Chebyshev interpolants sampled from the Jost solver; complex
    arguments within `strip_height` of the axis continue analytically.
    """
    c: float
    nu: float
    L: float
    family: str = "custom"
    params: dict = field(default_factory=dict)
    poles: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=complex))
    c_norm: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=complex))
    C_norm: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=complex))
    kappa1: complex = 0.0
    kappa2: complex = 0.0
    gamma: complex = 0.0
    alpha_match: complex = 0.0
    beta_match: complex = 0.0
    generic: bool = True
    diagnostics: dict = field(default_factory=dict)
    strip_height: float = 0.25
    lens_height: float = 0.125
    S: float = 8.0
    # interpolant-backed fields (None for the pure step)
    pure: object = None
    rl_ip: object = None
    rr_ip: object = None
    a_ip: object = None
    b_ip: object = None
    A_ip: object = None
    B_ip: object = None
    rrcut_ip: object = None
    fcut_ip: object = None
    u0_integral: float = 0.0

    # -- basic coefficients ------------------------------------------------
    @property
    def is_pure_step(self):
        return self.pure is not None

    def a(self, z):
        if self.pure:
            return self.pure.a(z)
        return self.a_ip(z)

    def b(self, z):
        if self.pure:
            return self.pure.b(z)
        return self.b_ip(z)

    def A(self, z):
        if self.pure:
            return self.pure.A(z)
        return self.A_ip(z)

    def B(self, z):
        if self.pure:
            return self.pure.B(z)
        return self.B_ip(z)

    # -- reflection coefficients -------------------------------------------
    def Rl(self, z):
        """Left reflection; real axis (both pieces) and the strip.
        Lower-half arguments are only valid off the cut."""
        if self.pure:
            return self.pure.rl(z)
        return self.rl_ip(z)

    def Rl_neg(self, z):
        """Continuation of s -> R_l(-s) (= conj(R_l) on the axis)."""
        return self.Rl(-np.asarray(z, dtype=complex))

    def T(self, z):
        """1 - R_l(z) R_l(-z); positive on the real line off the cut."""
        z = np.asarray(z, dtype=complex)
        return 1.0 - self.Rl(z) * self.Rl_neg(z)

    def Rr(self, z):
        """Right reflection off the cut (s^2 > c^2, strip continuation)."""
        if self.pure:
            return self.pure.rr_offcut(z)
        return self.rr_ip(z)

    def Rr_neg(self, z):
        return self.Rr(-np.asarray(z, dtype=complex))

    def Rr_cut(self, z):
        """Matched extension of R_r on [-c,c] (+ continuation near +-c)."""
        if self.pure:
            return self.pure.rr_cut(z)
        return self.rrcut_ip(z)

    def Rr_cut_neg(self, z):
        """Continuation of s -> R_r_cut(-s) = R_r_cut(s) - F(s)."""
        z = np.asarray(z, dtype=complex)
        return self.Rr_cut(z) - self.F_cut(z)

    def F_cut(self, z):
        """F = 1/(a+(-s) A+(s)) on the cut (+ continuation near +-c)."""
        if self.pure:
            return self.pure.f_cut(z)
        return self.fcut_ip(z)

    def Rr_any(self, s):
        """Piecewise R_r on the whole real line (spec evaluator)."""
        s = np.asarray(s, dtype=float)
        out = np.empty(s.shape, dtype=complex)
        cut = np.abs(s) <= self.c
        if np.any(~cut):
            out[~cut] = self.Rr(s[~cut])
        if np.any(cut):
            out[cut] = self.Rr_cut(s[cut].astype(complex))
        return out if out.shape else complex(out)


# ---------------------------------------------------------------------------
# genericity and time phases


def genericity_check(direct, n_grid=41):
    """Both Wronskian conditions plus a-nonvanishing on a sample grid.

    W1 = W(phi^m(c), psi^p(c)) with psi^p(c) = psihat^p(0);
    W2 = W(psi^{m,+}(0), phi^p(0)) with psi^{m,+}(0) = psihat^m(ic).
    Returns (ok, diagnostics).
    """
    c = direct.c
    lft_c = direct.left([c])
    rgt_0 = direct.right([0.0])
    W1 = _wronsk(lft_c["phi_m"][0], lft_c["dphi_m"][0],
                 rgt_0["psi_hat_p"][0], rgt_0["dpsi_hat_p"][0])
    scale1 = max(abs(lft_c["phi_m"][0] * rgt_0["dpsi_hat_p"][0]),
                 abs(rgt_0["psi_hat_p"][0] * lft_c["dphi_m"][0]), 1e-30)

    lft_0 = direct.left([0.0])
    rgt_ic = direct.right([1j * c])
    W2 = _wronsk(rgt_ic["psi_hat_m"][0], rgt_ic["dpsi_hat_m"][0],
                 lft_0["phi_p"][0], lft_0["dphi_p"][0])
    scale2 = max(abs(rgt_ic["psi_hat_m"][0] * lft_0["dphi_p"][0]),
                 abs(lft_0["phi_p"][0] * rgt_ic["dpsi_hat_m"][0]), 1e-30)
    # backward integration of psihat^m at ic loses ~ e^{2 c L_right} digits
    noise2 = direct.rtol * np.exp(2.0 * c * direct.L_right)

    grid = np.concatenate([np.linspace(c * 1.02, c * 6, n_grid),
                           -np.linspace(c * 1.02, c * 6, n_grid)])
    a_vals, _, _, _ = direct.abAB(grid)
    a_min = float(np.abs(a_vals).min())

    ok = (abs(W1) / scale1 > 1e-8) and (abs(W2) / scale2 > max(1e-8, 2 * noise2)) \
        and (a_min > 1e-8)
    diag = {"W1": complex(W1), "W1_rel": float(abs(W1) / scale1),
            "W2": complex(W2), "W2_rel": float(abs(W2) / scale2),
            "W2_noise_estimate": float(noise2), "min_abs_a": a_min}
    return bool(ok), diag


def time_phases(c, x, t, s=None, zj=None, lam_side="+"):
    """Multiplicative jump phases of the two RH formulations.

    left:  e^{-2 i s x - 8 i s^3 t}           (entry multiplying R_l(s))
    right: e^{+2 i lam x + 8 i phi t},  phi = lam^3 + (3/2) c^2 lam
    poles: e^{-2 i z_j x - 8 i z_j^3 t} and e^{+2 i lam(z_j) x + 8 i phi(z_j) t}
    """
    out = {}
    if s is not None:
        s = np.asarray(s, dtype=complex)
        out["left"] = np.exp(-2j * s * x - 8j * s**3 * t)
        lv = lam(s, c, lam_side)
        phi = lv**3 + 1.5 * c * c * lv
        out["right"] = np.exp(2j * lv * x + 8j * phi * t)
    if zj is not None:
        zj = np.asarray(zj, dtype=complex)
        out["pole_left"] = np.exp(-2j * zj * x - 8j * zj**3 * t)
        lv = lam(zj, c)
        phi = lv**3 + 1.5 * c * c * lv
        out["pole_right"] = np.exp(2j * lv * x + 8j * phi * t)
    return out


# ---------------------------------------------------------------------------
# building the full scattering data


def build_scattering_data(data, n_sqrt=96, n_wide=128, strip_height=None,
                          S=None, tail_tol=1e-9, spectrum_N=400, rtol=2e-13):
    """Sample the Jost machinery into a ScatteringData object.

    For the pure step, closed forms are installed instead of tables (and
    there are provably no poles: z + lam(z) never vanishes off the cut).
    """
    from .spectrum import discrete_spectrum, norming_constants

    c = float(data.c)
    if data.is_pure_step:
        pure = PureStepScattering(c)
        k1, k2, g, al, be = pure.matching()
        return ScatteringData(
            c=c, nu=data.nu, L=data.L, family=data.family, params=dict(data.params),
            kappa1=k1, kappa2=k2, gamma=g, alpha_match=al, beta_match=be,
            generic=True, strip_height=10.0, lens_height=0.35,
            S=40.0 * max(1.0, c), pure=pure,
            diagnostics={"mode": "closed-form"}, u0_integral=0.0)

    direct = DirectScattering(data, rtol=rtol)

    # discrete spectrum first: pole heights bound the usable strip
    poles, spec_report = discrete_spectrum(data, N=spectrum_N)
    c_norm, C_norm, norm_diag = (np.zeros(0, complex), np.zeros(0, complex), [])
    if poles.size:
        c_norm, C_norm, norm_diag = norming_constants(direct, poles)

    y_min = float(min([p.imag for p in poles], default=np.inf))
    if strip_height is None:
        strip_height = min(0.45 * y_min, 0.5 * data.nu, 0.3)

    # real sampling range: extend until the reflection tail is negligible
    if S is None:
        S = 4.0 * max(1.0, c)
        while S < 40 * max(1.0, c):
            tail = np.abs(direct.rl(np.array([-S, S]))).max()
            if tail < tail_tol:
                break
            S *= 1.4
    S = float(S)

    sqrt_w = min(2.0, 0.45 * (S - c))
    wide_w = max(2.5, 8.0 * strip_height)
    lens_height = 0.5 * strip_height
    # ellipse cap: analyticity height ~ min(0.9 y_min, nu)
    H = min(0.9 * y_min, data.nu)

    rl_ip = build_strip_evaluator(direct.rl, c, S, tail=0.0, sqrt_width=sqrt_w,
                                  cut=True, wide_width=wide_w, n_sqrt=n_sqrt,
                                  n_wide=n_wide)
    rr_ip = build_strip_evaluator(direct.rr_offcut, c, S, tail=0.0,
                                  sqrt_width=sqrt_w, cut=False, wide_width=wide_w,
                                  n_sqrt=n_sqrt, n_wide=n_wide)

    def strip_tab(f, tail):
        return build_strip_evaluator(f, c, S, tail=tail, sqrt_width=sqrt_w,
                                     cut=False, wide_width=wide_w,
                                     n_sqrt=n_sqrt, n_wide=n_wide)

    a_ip = strip_tab(lambda s: direct.abAB(s)[0], 1.0)
    b_ip = strip_tab(lambda s: direct.abAB(s)[1], 0.0)
    A_ip = strip_tab(lambda s: direct.abAB(s)[2], 1.0)
    B_ip = strip_tab(lambda s: direct.abAB(s)[3], 0.0)

    # matching data and the on-cut tables
    k1, k2, g, al, be, match_diag = cut_matching_data(direct)

    def rrcut_vals(s):
        return rr_cut_formula(s, c, al, be, direct.f_cut(s))

    fcut_ip = CutEvaluator.build(direct.f_cut, c, sqrt_width=sqrt_w,
                                 n_sqrt=n_sqrt, n_wide=n_wide)
    rrcut_ip = CutEvaluator.build(rrcut_vals, c, sqrt_width=sqrt_w,
                                  n_sqrt=n_sqrt, n_wide=n_wide)

    generic, gen_diag = genericity_check(direct)

    from scipy.integrate import quad
    I_u = quad(lambda x: float(data.u0(np.array([x]))[0]), -data.L, data.L,
               points=sorted({0.0, *data.breakpoints}), limit=200)[0]

    # continuation self-check: interpolant vs direct Wronskians at probes
    # drawn from the query classes (lens line, wedges, outer strip)
    h = lens_height
    probes = np.concatenate([
        np.linspace(-0.95 * S, 0.95 * S, 9) + 1j * h,                  # lens line
        c + np.array([0.06, 0.12, 0.2]) * np.exp(1j * np.pi / 5),      # wedge +c
        -c - np.array([0.06, 0.12, 0.2]) * np.exp(-1j * np.pi / 6),    # wedge -c
        np.array([1.6 * c + 0.6j * h, -2.4 * c + 1.5j * h]),           # outer
    ])
    a_p, b_p, _, _ = direct.abAB(probes)
    rl_err = float(np.abs(rl_ip(probes) - b_p / a_p).max())

    return ScatteringData(
        c=c, nu=data.nu, L=data.L, family=data.family, params=dict(data.params),
        poles=poles, c_norm=c_norm, C_norm=C_norm,
        kappa1=k1, kappa2=k2, gamma=g, alpha_match=al, beta_match=be,
        generic=generic, strip_height=float(strip_height), S=S,
        lens_height=float(lens_height),
        rl_ip=rl_ip, rr_ip=rr_ip, a_ip=a_ip, b_ip=b_ip, A_ip=A_ip, B_ip=B_ip,
        rrcut_ip=rrcut_ip, fcut_ip=fcut_ip, u0_integral=float(I_u),
        diagnostics={"mode": "tables", "spectrum": spec_report,
                     "norming": norm_diag, "matching": match_diag,
                     "genericity": gen_diag, "rl_strip_probe_err": rl_err,
                     "analyticity_height": float(H)})
