"""
Piecewise-Chebyshev interpolants with analytic continuation off the real
axis.

Scattering functions are sampled on panels at scatter time; complex
queries inside a panel's Bernstein ellipse then continue the function
analytically.  Design points:

  * off-cut regions use 50%-overlapping wide panels; off-axis queries pick
    the panel with the nearest center, so a query never sits near a panel
    edge where the ellipse degenerates;
  * near the branch points +-c the functions are analytic in
    w = sqrt(+-(z-e)), so those neighborhoods sample in w (SqrtPanel);
  * a horizontal line family sampled at the preferred lens height makes
    contours that follow that line essentially exact, including directly
    above the branch points where real-axis panels degrade;
  * coefficient vectors are chopped at the noise floor so off-interval
    evaluation does not amplify rounding noise.
"""

import numpy as np
from dataclasses import dataclass

from .chebyshev import cheb_points, vals_to_coeffs, cheb_eval, chop_coeffs


@dataclass
class ChebPanel:
    """One Chebyshev panel on [a, b]."""
    a: float
    b: float
    coeffs: np.ndarray

    @classmethod
    def build(cls, f, a, b, n=64):
        x = 0.5 * (a + b) + 0.5 * (b - a) * cheb_points(n)
        return cls(float(a), float(b), chop_coeffs(vals_to_coeffs(f(x))))

    def __call__(self, z):
        tau = (2.0 * np.asarray(z, dtype=complex) - (self.a + self.b)) / (self.b - self.a)
        return cheb_eval(self.coeffs, tau)

    def flip(self):
        k = np.arange(len(self.coeffs))
        return ChebPanel(-self.b, -self.a, self.coeffs * (-1.0) ** k)


class OverlapFamily:
    """Wide panels with 50% overlap on [lo, hi] along a horizontal line
    Im z = height; queries use the panel whose center is nearest, keeping
    ellipse clearance uniform."""

    def __init__(self, centers, halfwidth, coeff_rows, height=0.0):
        self.centers = np.asarray(centers, dtype=float)
        self.halfwidth = float(halfwidth)
        self.coeff_rows = [np.asarray(rw) for rw in coeff_rows]
        self.height = float(height)

    @classmethod
    def build(cls, f, lo, hi, width, n=96, height=0.0):
        width = min(width, hi - lo)
        step = width / 2.0
        ncen = max(1, int(np.ceil(max(hi - lo - width, 0.0) / step)) + 1)
        centers = lo + width / 2.0 + step * np.arange(ncen)
        centers = np.minimum(centers, hi - width / 2.0)
        t = cheb_points(n)
        rows = []
        for ctr in centers:
            x = ctr + 0.5 * width * t + 1j * height
            rows.append(chop_coeffs(vals_to_coeffs(f(x))))
        return cls(centers, width / 2.0, rows, height)

    @property
    def lo(self):
        return self.centers[0] - self.halfwidth

    @property
    def hi(self):
        return self.centers[-1] + self.halfwidth

    def __call__(self, z):
        z = np.atleast_1d(np.asarray(z, dtype=complex))
        idx = np.argmin(np.abs(z.real[:, None] - self.centers[None, :]), axis=1)
        out = np.empty(z.shape, dtype=complex)
        for i in np.unique(idx):
            sel = idx == i
            tau = (z[sel] - 1j * self.height - self.centers[i]) / self.halfwidth
            out[sel] = cheb_eval(self.coeff_rows[i], tau)
        return out

    def flip(self):
        rows = [rw * (-1.0) ** np.arange(len(rw)) for rw in self.coeff_rows[::-1]]
        return OverlapFamily(-self.centers[::-1], self.halfwidth, rows, -self.height)


@dataclass
class SqrtPanel:
    """Interpolant in w = sqrt(sign*(z - edge)) for a function with a
    square-root expansion at `edge`; covers the z-interval of length
    `width` on the `sign` side and nearby complex points."""
    edge: float
    sign: float
    width: float
    coeffs: np.ndarray

    @classmethod
    def build(cls, f, edge, sign, width, n=64):
        t = cheb_points(n)
        wmax = np.sqrt(width)
        w = 0.5 * wmax * (t + 1.0)
        x = edge + sign * w * w
        return cls(float(edge), float(sign), float(width),
                   chop_coeffs(vals_to_coeffs(f(x))))

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        w = np.sqrt(self.sign * (z - self.edge) + 0j)
        tau = 2.0 * w / np.sqrt(self.width) - 1.0
        return cheb_eval(self.coeffs, tau)

    def flip(self):
        return SqrtPanel(-self.edge, -self.sign, self.width, self.coeffs)


@dataclass
class StripEvaluator:
    """Evaluator for a function on the real line with sqrt-type behavior
    at +-c, evaluable at complex points within the validated strip.

    Selection (x = Re z, h0 = line family height):
      |Im z| in the line band and |x| <= S -> line family (or its mirror
                                              via nothing: caller passes -z)
      |x -+ c| small                        -> SqrtPanel
      x in outer intervals                  -> OverlapFamily left/right
      |x| < c (cut present)                 -> OverlapFamily over the cut
      |x| > S                               -> constant tail
    """
    c: float
    S: float
    tail: complex
    sqrt_out_p: SqrtPanel = None
    sqrt_out_m: SqrtPanel = None
    sqrt_in_p: SqrtPanel = None
    sqrt_in_m: SqrtPanel = None
    wide_left: OverlapFamily = None
    wide_right: OverlapFamily = None
    wide_cut: OverlapFamily = None
    line: OverlapFamily = None
    seam_frac: float = 0.65
    line_band: float = 0.0

    def __call__(self, z):
        z = np.atleast_1d(np.asarray(z, dtype=complex))
        out = np.full(z.shape, complex(self.tail), dtype=complex)
        x = z.real
        c = self.c
        done = np.zeros(z.shape, dtype=bool)

        def apply(mask, part):
            m = mask & ~done
            if np.any(m) and part is not None:
                out[m] = part(z[m])
                done[m] = True

        if self.sqrt_out_p is not None:
            apply((x >= c) & (x - c <= self.seam_frac * self.sqrt_out_p.width),
                  self.sqrt_out_p)
        if self.sqrt_out_m is not None:
            apply((x <= -c) & (-c - x <= self.seam_frac * self.sqrt_out_m.width),
                  self.sqrt_out_m)
        if self.sqrt_in_p is not None:
            apply((x < c) & (c - x <= self.seam_frac * self.sqrt_in_p.width),
                  self.sqrt_in_p)
        if self.sqrt_in_m is not None:
            apply((x > -c) & (x + c <= self.seam_frac * self.sqrt_in_m.width),
                  self.sqrt_in_m)
        if self.wide_right is not None:
            apply((x > c) & (x <= self.S), self.wide_right)
        if self.wide_left is not None:
            apply((x < -c) & (x >= -self.S), self.wide_left)
        if self.wide_cut is not None:
            apply(np.abs(x) < c, self.wide_cut)
        if self.line is not None:
            apply(~done & (np.abs(x) <= self.S), self.line)
        return out if out.shape != () else complex(out)


def build_strip_evaluator(f, c, S, tail=0.0, sqrt_width=None, cut=False,
                          wide_width=None, n_sqrt=72, n_wide=96,
                          line_height=0.0, n_line=None):
    """Sample f on the standard panel layout.  f must accept arrays of
    points avoiding the exact branch points.  If line_height > 0, f is
    also sampled along Im z = line_height (f must accept complex input)."""
    sqrt_width = sqrt_width if sqrt_width is not None else min(1.0, 0.9 * c)
    wide_width = wide_width if wide_width is not None else 2.5
    seam = 0.65

    kw = dict(c=c, S=S, tail=tail, seam_frac=seam)
    kw["sqrt_out_p"] = SqrtPanel.build(f, c, +1.0, sqrt_width, n_sqrt)
    kw["sqrt_out_m"] = SqrtPanel.build(f, -c, -1.0, sqrt_width, n_sqrt)
    lo_r = c + 0.5 * seam * sqrt_width
    kw["wide_right"] = OverlapFamily.build(f, lo_r, S, wide_width, n_wide)
    kw["wide_left"] = OverlapFamily.build(f, -S, -lo_r, wide_width, n_wide)
    if cut:
        w_in = min(1.0, 0.9 * c)
        kw["sqrt_in_p"] = SqrtPanel.build(f, c, -1.0, w_in, n_sqrt)
        kw["sqrt_in_m"] = SqrtPanel.build(f, -c, +1.0, w_in, n_sqrt)
        hi = c - 0.5 * seam * w_in
        if hi > 0.1 * c:
            kw["wide_cut"] = OverlapFamily.build(f, -hi, hi,
                                                 min(wide_width, 2 * hi), n_wide)
    if line_height > 0:
        kw["line"] = OverlapFamily.build(f, -S, S, wide_width,
                                         n_line or n_wide, height=line_height)
    return StripEvaluator(**kw)


@dataclass
class CutEvaluator:
    """Same idea for functions living on [-c, c] only (F, matched R_r);
    queried on the cut and in wedge neighborhoods of +-c."""
    c: float
    sqrt_in_p: SqrtPanel
    sqrt_in_m: SqrtPanel
    wide_cut: OverlapFamily
    seam_frac: float = 0.65

    @classmethod
    def build(cls, f, c, sqrt_width=None, n_sqrt=72, n_wide=96):
        w_in = min(sqrt_width if sqrt_width is not None else 1.0, 0.9 * c)
        sip = SqrtPanel.build(f, c, -1.0, w_in, n_sqrt)
        sim = SqrtPanel.build(f, -c, +1.0, w_in, n_sqrt)
        hi = c - 0.5 * 0.65 * w_in
        wide = OverlapFamily.build(f, -hi, hi, min(2.5, 2 * hi), n_wide) \
            if hi > 0.1 * c else None
        return cls(c=c, sqrt_in_p=sip, sqrt_in_m=sim, wide_cut=wide)

    def __call__(self, z):
        z = np.atleast_1d(np.asarray(z, dtype=complex))
        out = np.zeros(z.shape, dtype=complex)
        x = z.real
        done = np.zeros(z.shape, dtype=bool)
        m = (self.c - x) <= self.seam_frac * self.sqrt_in_p.width
        out[m] = self.sqrt_in_p(z[m])
        done |= m
        m = ((x + self.c) <= self.seam_frac * self.sqrt_in_m.width) & ~done
        out[m] = self.sqrt_in_m(z[m])
        done |= m
        if self.wide_cut is not None and np.any(~done):
            out[~done] = self.wide_cut(z[~done])
        return out if out.shape != () else complex(out)
