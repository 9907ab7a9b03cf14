"""
Contour pieces with charts to [-1,1].

Every piece stores a parametrization M(tau) for tau in [-1,1] plus an
`orient` sign: +1 if traversal tau=-1 -> +1 agrees with the piece's
orientation as part of the contour, -1 otherwise (used for rays that run
in from infinity, where the chart must keep the infinite end at tau=+1).

Charts:
    segment  M(tau) = mid + half*tau
    ray      M(tau) = a + d*(1+tau)/(1-tau)     (a at tau=-1, oo at tau=+1)
    arc      M(tau) = z0 + R e^{i theta(tau)},  theta affine in tau
    sqrtseg  M(tau) = e + g*((1+tau)/2)^2       (square-root clustering at
             the branch-point end e; densities with sqrt expansions at e
             become analytic in the chart)

The point set is Chebyshev points of the first kind, so nodes never sit
on junctions.  mirror() produces the piece of -Gamma with reversed
orientation, with node sets that negate exactly.
"""

import numpy as np
from dataclasses import dataclass, field

from .chebyshev import cheb_points


@dataclass
class Piece:
    kind: str                  # 'segment' | 'ray' | 'arc'
    params: tuple              # chart parameters
    n: int = 40
    orient: int = 1
    label: str = ""

    def __post_init__(self):
        if self.n < 4:
            raise ValueError("n_points >= 4 required")
        if self.kind not in ("segment", "ray", "arc", "sqrtseg"):
            raise ValueError(self.kind)
        if self.kind == "segment":
            a, b = self.params
            if a == b:
                raise ValueError("zero-length segment")
        if self.kind == "ray" and self.params[1] == 0:
            raise ValueError("ray needs a nonzero direction")

    # chart ------------------------------------------------------------
    def M(self, tau):
        tau = np.asarray(tau, dtype=complex)
        if self.kind == "segment":
            a, b = self.params
            return 0.5 * (a + b) + 0.5 * (b - a) * tau
        if self.kind == "ray":
            a, d = self.params
            return a + d * (1 + tau) / (1 - tau)
        if self.kind == "sqrtseg":
            e, g = self.params
            return e + g * (0.5 * (1 + tau)) ** 2
        z0, R, th0, th1 = self.params
        return z0 + R * np.exp(1j * (th0 + 0.5 * (th1 - th0) * (tau + 1)))

    def Mp(self, tau):
        tau = np.asarray(tau, dtype=complex)
        if self.kind == "segment":
            a, b = self.params
            return np.full(tau.shape, 0.5 * (b - a), dtype=complex)
        if self.kind == "ray":
            a, d = self.params
            return 2 * d / (1 - tau) ** 2
        if self.kind == "sqrtseg":
            e, g = self.params
            return g * 0.5 * (1 + tau)
        z0, R, th0, th1 = self.params
        ang = th0 + 0.5 * (th1 - th0) * (tau + 1)
        return 1j * R * 0.5 * (th1 - th0) * np.exp(1j * ang)

    def Mpp(self, tau):
        tau = np.asarray(tau, dtype=complex)
        if self.kind == "segment":
            return np.zeros(tau.shape, dtype=complex)
        if self.kind == "ray":
            a, d = self.params
            return 4 * d / (1 - tau) ** 3
        if self.kind == "sqrtseg":
            e, g = self.params
            return np.full(tau.shape, 0.5 * g, dtype=complex)
        z0, R, th0, th1 = self.params
        ang = th0 + 0.5 * (th1 - th0) * (tau + 1)
        return -R * (0.5 * (th1 - th0)) ** 2 * np.exp(1j * ang)

    def tau_of(self, z):
        """Chart preimage (complex); for arcs via the principal log
        centered on the angular window."""
        z = np.asarray(z, dtype=complex)
        if self.kind == "segment":
            a, b = self.params
            return (2 * z - (a + b)) / (b - a)
        if self.kind == "ray":
            a, d = self.params
            rho = (z - a) / d
            with np.errstate(divide="ignore", invalid="ignore"):
                tau = (rho - 1) / (rho + 1)
            return np.where(np.isfinite(tau), tau, 1e6)
        if self.kind == "sqrtseg":
            e, g = self.params
            sig = np.sqrt((z - e) / g)
            return 2 * sig - 1
        z0, R, th0, th1 = self.params
        mid = 0.5 * (th0 + th1)
        w = (z - z0) / R * np.exp(-1j * mid)
        w = np.where(w == 0, 1e-300, w)
        theta = -1j * np.log(w) + mid
        return 2 * (theta - th0) / (th1 - th0) - 1

    # nodes --------------------------------------------------------------
    @property
    def taus(self):
        return cheb_points(self.n)

    @property
    def nodes(self):
        return self.M(self.taus)

    @property
    def is_unbounded(self):
        return self.kind == "ray"

    def endpoints(self):
        if self.kind == "ray":
            return (self.M(np.array([-1.0]))[0],)
        return tuple(self.M(np.array([-1.0, 1.0])))

    def mirror(self):
        """The piece of -Gamma with reversed orientation."""
        if self.kind == "segment":
            a, b = self.params
            return Piece("segment", (-b, -a), self.n, self.orient,
                         self.label + "~")
        if self.kind == "sqrtseg":
            e, g = self.params
            return Piece("sqrtseg", (-e, -g), self.n, -self.orient,
                         self.label + "~")
        if self.kind == "ray":
            a, d = self.params
            return Piece("ray", (-a, -d), self.n, -self.orient,
                         self.label + "~")
        z0, R, th0, th1 = self.params
        return Piece("arc", (-z0, R, th1 + np.pi, th0 + np.pi), self.n,
                     self.orient, self.label + "~")


def full_circle(center, radius, n_per_arc=16, clockwise=True, label="circ"):
    """A circle as two half-arcs (so each chart is single-valued)."""
    if clockwise:
        spans = [(np.pi / 2, -np.pi / 2), (-np.pi / 2, -3 * np.pi / 2)]
    else:
        spans = [(-np.pi / 2, np.pi / 2), (np.pi / 2, 3 * np.pi / 2)]
    return [Piece("arc", (center, radius, a, b), n_per_arc, 1, f"{label}:{i}")
            for i, (a, b) in enumerate(spans)]


@dataclass
class Contour:
    """An admissible contour: pieces intersecting only at endpoints, with
    the z -> -z symmetry if symmetric=True (mirror pieces present)."""
    pieces: list
    symmetric: bool = True

    @property
    def n_nodes(self):
        return sum(p.n for p in self.pieces)

    def all_nodes(self):
        return np.concatenate([p.nodes for p in self.pieces])

    def piece_slices(self):
        out = []
        k = 0
        for p in self.pieces:
            out.append(slice(k, k + p.n))
            k += p.n
        return out

    def node_pairing(self):
        """index map j -> j' with node[j'] = -node[j]; requires symmetric
        construction (mirror node sets negate exactly)."""
        nodes = self.all_nodes()
        order = np.lexsort((np.round(nodes.imag, 12), np.round(nodes.real, 12)))
        neg = -nodes
        order_neg = np.lexsort((np.round(neg.imag, 12), np.round(neg.real, 12)))
        pair = np.empty(len(nodes), dtype=int)
        pair[order_neg] = order
        gaps = np.abs(nodes[pair] + nodes)
        if gaps.max() > 1e-9 * max(1.0, np.abs(nodes).max()):
            raise ValueError(f"contour is not node-symmetric (gap {gaps.max():.2e})")
        return pair
