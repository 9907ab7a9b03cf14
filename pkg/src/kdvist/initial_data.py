"""
Step-like initial data u(x,0) = u0(x) + H_c(x), where H_c = -c^2 for x > 0
and 0 for x <= 0, and u0 is the decaying perturbation.

The solver works with the complementary potentials

    ul(x) = u0(x) + H_c(x)          (the initial data itself; -> 0 at -inf)
    ur(x) = ul(x) + c^2             (-> 0 at +inf)

Builtin families (given directly in the normalized frame):

    pure-step      u(x,0) = H_c
    erf-squared    u(x,0) = -(c^2/4)(1 + erf x)^2            [smooth]
    gaussian-bump  erf-squared + amp exp(-x^2/2)             [one soliton
                                                              at c=1, amp=2]
    box            u0 = height on [x0, x1)
    table          cubic spline through u0 samples, zero outside

The smooth families provide ul/ur as closed forms so the ODE solver never
sees an artificial indicator-function kink.
"""

import numpy as np
from dataclasses import dataclass, field
from scipy.special import erf
from scipy.interpolate import CubicSpline


@dataclass
class InitialData:
    """Step-like initial data via its complementary potentials.

    c: step height parameter (u -> -c^2 as x -> +inf), must be > 0.
    ul_func / ur_func: the left/right complementary potentials (ur = ul +
        c^2 pointwise away from breakpoints).
    breakpoints: sorted x-values where ul/ur jump.
    nu: exponential decay rate, perturbation in L1(e^{2 nu |x|} dx).
    L: truncation radius for |ul(-x)|, |ur(x)|.
    """
    c: float
    ul_func: object
    ur_func: object
    breakpoints: tuple = ()
    nu: float = 1.0
    L: float = 12.0
    family: str = "custom"
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.c <= 0:
            raise ValueError("c must be positive")
        if self.nu <= 0 or self.L <= 0:
            raise ValueError("nu and L must be positive")
        bp = tuple(sorted(self.breakpoints))
        if any(b2 <= b1 for b1, b2 in zip(bp, bp[1:])):
            raise ValueError("breakpoints must be strictly increasing")
        if bp and (bp[0] < -self.L or bp[-1] > self.L):
            raise ValueError("breakpoints must lie in [-L, L]")
        self.breakpoints = bp

    @property
    def is_pure_step(self):
        return self.family == "pure-step"

    def ul(self, x):
        return self.ul_func(np.asarray(x, dtype=float))

    def ur(self, x):
        return self.ur_func(np.asarray(x, dtype=float))

    def u_initial(self, x):
        """u(x,0) in the normalized frame (0 at -inf, -c^2 at +inf)."""
        return self.ul(x)

    def u0(self, x):
        """The perturbation u(x,0) - H_c."""
        x = np.asarray(x, dtype=float)
        return self.ul(x) + self.c**2 * (x > 0)


def _truncation_radius(ul, ur, lo=4.0, hi=40.0, tol=1e-14):
    """Smallest L with |ul(-x)|, |ur(x)| < tol beyond L (sampled)."""
    x = np.linspace(lo, hi, 400)
    vals = np.maximum(np.abs(ul(-x)), np.abs(ur(x)))
    idx = np.nonzero(vals > tol)[0]
    return lo if idx.size == 0 else min(hi, x[idx[-1]] + 0.5)


def make_initial_data(family, c, **params):
    family = family.replace("_", "-")
    c2 = c * c

    if family == "pure-step":
        def ul(x):
            return -c2 * (x > 0)

        def ur(x):
            return c2 * (x < 0)

        return InitialData(c=c, ul_func=ul, ur_func=ur, breakpoints=(0.0,),
                           nu=params.get("nu", 10.0), L=params.get("L", 6.0),
                           family="pure-step", params={})

    if family == "erf-squared":
        def ul(x):
            return -0.25 * c2 * (1.0 + erf(x)) ** 2

        def ur(x):
            return c2 - 0.25 * c2 * (1.0 + erf(x)) ** 2

        L = params.get("L", _truncation_radius(ul, ur))
        return InitialData(c=c, ul_func=ul, ur_func=ur, breakpoints=(),
                           nu=params.get("nu", 2.0), L=L,
                           family="erf-squared", params={})

    if family == "gaussian-bump":
        amp = params.get("amp", 2.0)

        def ul(x):
            return -0.25 * c2 * (1.0 + erf(x)) ** 2 + amp * np.exp(-0.5 * x * x)

        def ur(x):
            return c2 - 0.25 * c2 * (1.0 + erf(x)) ** 2 + amp * np.exp(-0.5 * x * x)

        L = params.get("L", _truncation_radius(ul, ur))
        return InitialData(c=c, ul_func=ul, ur_func=ur, breakpoints=(),
                           nu=params.get("nu", 2.0), L=L,
                           family="gaussian-bump", params={"amp": amp})

    if family == "box":
        h = params.get("height", 1.0)
        x0 = params.get("x0", -1.0)
        x1 = params.get("x1", 1.0)
        if not x0 < x1:
            raise ValueError("box needs x0 < x1")

        def box(x):
            return h * ((x >= x0) & (x < x1))

        def ul(x):
            return box(x) - c2 * (x > 0)

        def ur(x):
            return box(x) + c2 * (x < 0)

        bps = tuple(sorted({x0, x1, 0.0}))
        L = params.get("L", max(abs(x0), abs(x1)) + 1.0)
        return InitialData(c=c, ul_func=ul, ur_func=ur, breakpoints=bps,
                           nu=params.get("nu", 10.0), L=L,
                           family="box", params={"height": h, "x0": x0, "x1": x1})

    if family == "table":
        xs = np.asarray(params["x"], dtype=float)
        vals = np.asarray(params["u0"], dtype=float)
        spline = CubicSpline(xs, vals, bc_type="natural")

        def u0(x):
            x = np.asarray(x, dtype=float)
            inside = (x >= xs[0]) & (x <= xs[-1])
            out = np.zeros_like(x)
            out[inside] = spline(x[inside])
            return out

        def ul(x):
            return u0(x) - c2 * (x > 0)

        def ur(x):
            return u0(x) + c2 * (x < 0)

        bps = tuple(sorted(set(params.get("breakpoints", ())) | {0.0}))
        return InitialData(c=c, ul_func=ul, ur_func=ur, breakpoints=bps,
                           nu=params.get("nu", 1.0),
                           L=params.get("L", max(abs(xs[0]), abs(xs[-1]))),
                           family="table", params={})

    raise ValueError(f"unknown initial-data family: {family!r}")
