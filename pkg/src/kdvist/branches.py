"""
Branch functions for the two-sheeted spectral variable.

lam(z):    the branch of sqrt(z^2 - c^2) cut along [-c, c], with lam(z) ~ z
           at infinity.  Boundary values on the cut are lam_plus(s) =
           i*sqrt(c^2-s^2) from above and its negative from below.
lam_cont:  the opposite branch structure, cut along (-inf,-c] u [c,inf):
           the analytic continuation of lam_plus through the open cut.  It
           is even in z and equals lam on the upper half-plane.
parametrix_w: explicit 2x2 local solution of the sigma_1 jump on the cut.
"""

import numpy as np

_SIGMA1 = np.array([[0.0, 1.0], [1.0, 0.0]])


def lam(z, c, side=None):
    """sqrt(z^2-c^2), cut on [-c,c], lam ~ z at infinity.

    For real z in (-c, c) a side flag is required; '+' gives the boundary
    value from the upper half-plane, i*sqrt(c^2-s^2).
    """
    z = np.asarray(z, dtype=complex)
    on_cut = (z.imag == 0) & (np.abs(z.real) < c)
    if np.any(on_cut):
        if side is None:
            raise ValueError("lam on the cut requires a side flag")
        sgn = 1.0 if side == "+" else -1.0
        cut_val = sgn * 1j * np.sqrt(np.maximum(c * c - z.real**2, 0.0))
        off_val = np.sqrt(z - c) * np.sqrt(z + c)
        return np.where(on_cut, cut_val, off_val)
    return np.sqrt(z - c) * np.sqrt(z + c)


def lam_cont(z, c):
    """Analytic continuation of lam_plus through the open cut: i*sqrt(c-z)*
    sqrt(c+z) with principal roots; analytic off (-inf,-c] u [c,inf), even,
    equals lam on the open upper half-plane."""
    z = np.asarray(z, dtype=complex)
    return 1j * np.sqrt(c - z) * np.sqrt(c + z)


def sqrt_cut(z, c):
    """Continuation of sqrt(c^2-s^2) off the cut (= -i*lam_cont)."""
    return -1j * lam_cont(z, c)


def phase_phi(z, c, side=None):
    """phi = lam^3 + (3/2) c^2 lam, the right-problem time phase."""
    lv = lam(z, c, side)
    return lv**3 + 1.5 * c * c * lv


def phase_phi_cont(z, c):
    lv = lam_cont(z, c)
    return lv**3 + 1.5 * c * c * lv


def kappa(z, c):
    """sqrt((z+c)/(z-c)) with cut [-c,c], -> 1 at infinity."""
    z = np.asarray(z, dtype=complex)
    return np.sqrt(z + c) / np.sqrt(z - c)


def parametrix_w(z, c, side=None, inverse=False):
    """The local sigma_1-jump solution

        W(z) = 1/2 [[k+1, 1-k], [1-k, k+1]],  k = sqrt((z+c)/(z-c)).

    W is analytic off [-c,c], W -> I at infinity, W+ = W- sigma_1 on the
    cut, det W = k, and sigma_1 W^{-1}(-z) sigma_1 = W(z).  On the cut a
    side flag picks the boundary value.  inverse=True returns W^{-1}
    (replace k by 1/k).
    """
    z = np.asarray(z, dtype=complex)
    on_cut = (z.imag == 0) & (np.abs(z.real) < c)
    if np.any(on_cut):
        if side is None:
            raise ValueError("parametrix_w on the cut requires a side flag")
        sgn = 1.0 if side == "+" else -1.0
        # kappa_plus(s) = -i sqrt((s+c)/(c-s)) from above
        kv_cut = -sgn * 1j * np.sqrt((z.real + c) / (c - z.real))
        kv_off = kappa(z, c)
        kv = np.where(on_cut, kv_cut, kv_off)
    else:
        kv = kappa(z, c)
    if inverse:
        kv = 1.0 / kv
    out = np.empty(z.shape + (2, 2), dtype=complex)
    out[..., 0, 0] = out[..., 1, 1] = 0.5 * (kv + 1.0)
    out[..., 0, 1] = out[..., 1, 0] = 0.5 * (1.0 - kv)
    return out
