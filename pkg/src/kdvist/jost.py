"""
Jost solutions of -psi'' - u psi = z^2 psi at x = 0 for step-like data.

The renormalized functions N^{p,m} (left, potential ul on (-inf,0]) and
Mhat^{p,m} (right, potential ur on [0,inf)) satisfy Volterra integral
equations equivalent to regular 2x2 ODE systems with no 1/z singularity
(obtained by substituting phi = e^{-+izx} N into -phi'' - u phi = z^2 phi):

    left,  integrate -L -> 0:
      Nm' = Vm,  Vm' =  2iz Vm - ul Nm        (phi^m = e^{-izx} Nm)
      Np' = Vp,  Vp' = -2iz Vp - ul Np        (phi^p = e^{+izx} Np)
    right, integrate +L -> 0 with spectral argument mu:
      Mp' = Vp,  Vp' = -2imu Vp - ur Mp       (psihat^p = e^{+imux} Mp)
      Mm' = Vm,  Vm' =  2imu Vm - ur Mm       (psihat^m = e^{-imux} Mm)

Initial values are (1, 0) at the truncation point, exact once the
potential is below machine tolerance there.  Integration splits at the
potential's breakpoints so discontinuous data costs no accuracy.

Validity: the left system is stable for Im z >= 0 (and in the decay strip
below); the right system at mu is stable for Im mu >= 0 in the Mp
channel and Im mu <= 0 (or |Im mu| < nu) in the Mm channel.  Requests for
Mhat^m high on the upper imaginary mu-axis lose ~e^{2 Im(mu) L} digits;
callers keep Im(mu)*L moderate.
"""

import numpy as np
from dataclasses import dataclass
from scipy.integrate import solve_ivp


@dataclass
class JostValues:
    """Jost solutions and x-derivatives at x = 0 for one z (left side) or
    one mu (right side, hatted functions)."""
    z: complex
    phi_p: complex = None
    phi_m: complex = None
    dphi_p: complex = None
    dphi_m: complex = None
    psi_hat_p: complex = None
    psi_hat_m: complex = None
    dpsi_hat_p: complex = None
    dpsi_hat_m: complex = None

    def wronskian_left(self):
        """W(phi^p, phi^m); equals -2iz for exact solutions."""
        return self.phi_p * self.dphi_m - self.phi_m * self.dphi_p


class _Segmented:
    """Integrate y' = f(x,y) over [x0, x1] split at interior breakpoints."""

    def __init__(self, breakpoints, rtol, atol, method="DOP853"):
        self.breakpoints = np.asarray(breakpoints, dtype=float)
        self.rtol = rtol
        self.atol = atol
        self.method = method

    def run(self, f, x0, x1, y0):
        cuts = self.breakpoints
        inner = cuts[(cuts > min(x0, x1)) & (cuts < max(x0, x1))]
        pts = np.concatenate([[x0], np.sort(inner) if x1 > x0 else np.sort(inner)[::-1], [x1]])
        y = y0
        for a, b in zip(pts[:-1], pts[1:]):
            if a == b:
                continue
            sol = solve_ivp(f, (a, b), y, method=self.method,
                            rtol=self.rtol, atol=self.atol, dense_output=False)
            if not sol.success:
                raise RuntimeError(f"Jost ODE integration failed on [{a},{b}]: {sol.message}")
            y = sol.y[:, -1]
        return y


def _pair_system(u_of_x, sign_vec, breakpoints, x0, y0_count, rtol, atol):
    """Shared integrator for systems  N' = V,  V' = sign*V - u*N  stacked
    over a vector of signs (one per channel/spectral value)."""

    def rhs(x, y):
        y = y.reshape(2, y0_count)
        u = u_of_x(x)
        out = np.empty_like(y)
        out[0] = y[1]
        out[1] = sign_vec * y[1] - u * y[0]
        return out.ravel()

    y0 = np.zeros((2, y0_count), dtype=complex)
    y0[0] = 1.0
    seg = _Segmented(breakpoints, rtol, atol)
    yf = seg.run(rhs, x0, 0.0, y0.ravel()).reshape(2, y0_count)
    return yf[0], yf[1]


def _solve_left_batch(data, zs, rtol, atol, L, channels="mp"):
    """Renormalized left Jost values for an array of z. Returns a dict of
    arrays (subset of Nm, Vm, Np, Vp) at x = 0."""
    zs = np.asarray(zs, dtype=complex).ravel()
    signs = []
    if "m" in channels:
        signs.append(2j * zs)
    if "p" in channels:
        signs.append(-2j * zs)
    sign_vec = np.concatenate(signs)
    N, V = _pair_system(data.ul, sign_vec, data.breakpoints, -L, sign_vec.size,
                        rtol, atol)
    out = {}
    k = 0
    if "m" in channels:
        out["Nm"], out["Vm"] = N[k:k + zs.size], V[k:k + zs.size]
        k += zs.size
    if "p" in channels:
        out["Np"], out["Vp"] = N[k:k + zs.size], V[k:k + zs.size]
    return out


def _solve_right_batch(data, mus, rtol, atol, L, channels="pm"):
    """Renormalized right Jost values for an array of mu. Returns a dict
    of arrays (subset of Mp, Vp, Mm, Vm) at x = 0."""
    mus = np.asarray(mus, dtype=complex).ravel()
    signs = []
    if "p" in channels:
        signs.append(-2j * mus)
    if "m" in channels:
        signs.append(2j * mus)
    sign_vec = np.concatenate(signs)
    N, V = _pair_system(data.ur, sign_vec, data.breakpoints, L, sign_vec.size,
                        rtol, atol)
    out = {}
    k = 0
    if "p" in channels:
        out["Mp"], out["Vp"] = N[k:k + mus.size], V[k:k + mus.size]
        k += mus.size
    if "m" in channels:
        out["Mm"], out["Vm"] = N[k:k + mus.size], V[k:k + mus.size]
    return out


def _chunks_by_magnitude(vals, size=24):
    order = np.argsort(np.abs(vals))
    return [order[i:i + size] for i in range(0, len(order), size)]


def solve_jost_left(data, zs, rtol=1e-12, atol=1e-13, L=None, channels="mp"):
    """phi^{p,m}(z;0) and x-derivatives for an array of z.

    Returns dict of arrays (subset per channels): phi_p, dphi_p, phi_m,
    dphi_m.  Channel 'p' amplifies errors by ~e^{2 Im(z) L}; callers with
    z high on the upper axis request channels='m'.
    """
    L = data.L if L is None else L
    zs = np.asarray(zs, dtype=complex).ravel()
    res = {k: np.empty_like(zs) for k in
           (["Nm", "Vm"] if "m" in channels else []) +
           (["Np", "Vp"] if "p" in channels else [])}
    for idx in _chunks_by_magnitude(zs):
        part = _solve_left_batch(data, zs[idx], rtol, atol, L, channels)
        for k, v in part.items():
            res[k][idx] = v
    out = {}
    if "m" in channels:
        out["phi_m"] = res["Nm"]
        out["dphi_m"] = res["Vm"] - 1j * zs * res["Nm"]
    if "p" in channels:
        out["phi_p"] = res["Np"]
        out["dphi_p"] = res["Vp"] + 1j * zs * res["Np"]
    return out


def solve_jost_right(data, mus, rtol=1e-12, atol=1e-13, L=None, channels="pm"):
    """psihat^{p,m}(mu;0) and x-derivatives for an array of mu (the hatted
    functions; callers substitute mu = lam(z)).  Channel 'm' amplifies
    errors by ~e^{2 Im(mu) L} for mu on the upper axis."""
    L = data.L if L is None else L
    mus = np.asarray(mus, dtype=complex).ravel()
    res = {k: np.empty_like(mus) for k in
           (["Mp", "Vp"] if "p" in channels else []) +
           (["Mm", "Vm"] if "m" in channels else [])}
    for idx in _chunks_by_magnitude(mus):
        part = _solve_right_batch(data, mus[idx], rtol, atol, L, channels)
        for k, v in part.items():
            res[k][idx] = v
    out = {}
    if "p" in channels:
        out["psi_hat_p"] = res["Mp"]
        out["dpsi_hat_p"] = res["Vp"] + 1j * mus * res["Mp"]
    if "m" in channels:
        out["psi_hat_m"] = res["Mm"]
        out["dpsi_hat_m"] = res["Vm"] - 1j * mus * res["Mm"]
    return out


def solve_jost(data, z, side, rtol=1e-12, atol=1e-13):
    """Single-point JostValues container (side = 'left' or 'right').

    For side='right', z is interpreted as the hatted spectral argument mu;
    use lam(z) to evaluate psi^{p,m}(z;x) = psihat^{p,m}(lam(z);x).
    """
    z = complex(z)
    jv = JostValues(z=z)
    if side == "left":
        out = solve_jost_left(data, [z], rtol, atol)
        jv.phi_p, jv.dphi_p = out["phi_p"][0], out["dphi_p"][0]
        jv.phi_m, jv.dphi_m = out["phi_m"][0], out["dphi_m"][0]
    elif side == "right":
        out = solve_jost_right(data, [z], rtol, atol)
        jv.psi_hat_p, jv.dpsi_hat_p = out["psi_hat_p"][0], out["dpsi_hat_p"][0]
        jv.psi_hat_m, jv.dpsi_hat_m = out["psi_hat_m"][0], out["dpsi_hat_m"][0]
    else:
        raise ValueError("side must be 'left' or 'right'")
    return jv


def shooting_oracle(data, z, side="left", rtol=1e-11, atol=1e-12):
    """Independent check: integrate the Schrodinger equation in original
    variables, psi'' = -(z^2 + u) psi, from the truncation point with
    plane-wave data.  Returns (psi(0), psi'(0)) pairs for the p/m waves.

    Deliberately shares no code path with the renormalized solver.
    """
    z = complex(z)

    if side == "left":
        u, x0 = data.ul, -data.L

        def rhs(x, y):
            return [y[1], -(z * z + u(x)) * y[0]]

        out = {}
        for tag, k in (("p", z), ("m", -z)):
            y0 = [np.exp(1j * k * x0), 1j * k * np.exp(1j * k * x0)]
            seg = _Segmented(data.breakpoints, rtol, atol)
            yf = seg.run(lambda x, y: np.asarray(rhs(x, y)), x0, 0.0,
                         np.asarray(y0, dtype=complex))
            out[tag] = (yf[0], yf[1])
        return out

    u, x0 = data.ur, data.L

    def rhs(x, y):
        return [y[1], -(z * z + u(x)) * y[0]]

    out = {}
    for tag, k in (("p", z), ("m", -z)):
        y0 = [np.exp(1j * k * x0), 1j * k * np.exp(1j * k * x0)]
        seg = _Segmented(data.breakpoints, rtol, atol)
        yf = seg.run(lambda x, y: np.asarray(rhs(x, y)), x0, 0.0,
                     np.asarray(y0, dtype=complex))
        out[tag] = (yf[0], yf[1])
    return out
