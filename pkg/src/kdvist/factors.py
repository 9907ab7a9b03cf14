"""
2x2 jump-factor expressions with x-differentiation.

A Factor evaluates to (n,2,2) arrays at contour points and knows its own
x-derivative (phases carry all the x-dependence, so derivatives are
entrywise products).  An Expr is an ordered product of factors with +-1
powers; its value and x-derivative follow from the product rule, with
inverse derivatives via d(F^{-1}) = -F^{-1} F_x F^{-1}.
"""

import numpy as np

SIGMA1 = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)


def inv2(A):
    """Vectorized 2x2 inverse."""
    det = A[..., 0, 0] * A[..., 1, 1] - A[..., 0, 1] * A[..., 1, 0]
    out = np.empty_like(A)
    out[..., 0, 0] = A[..., 1, 1]
    out[..., 1, 1] = A[..., 0, 0]
    out[..., 0, 1] = -A[..., 0, 1]
    out[..., 1, 0] = -A[..., 1, 0]
    return out / det[..., None, None]


class Factor:
    """Base: value(s)->(n,2,2); xval(s) -> x-derivative, zero by default."""

    def value(self, s):
        raise NotImplementedError

    def xval(self, s):
        s = np.asarray(s, dtype=complex)
        return np.zeros(s.shape + (2, 2), dtype=complex)


class ConstMat(Factor):
    def __init__(self, mat):
        self.mat = np.asarray(mat, dtype=complex)

    def value(self, s):
        s = np.asarray(s, dtype=complex)
        return np.broadcast_to(self.mat, s.shape + (2, 2)).copy()


class TriU(Factor):
    """[[1, e(s)],[0, 1]] with optional x-derivative of the entry."""

    def __init__(self, entry, entry_dx=None):
        self.entry = entry
        self.entry_dx = entry_dx

    def value(self, s):
        s = np.asarray(s, dtype=complex)
        out = np.zeros(s.shape + (2, 2), dtype=complex)
        out[..., 0, 0] = out[..., 1, 1] = 1.0
        out[..., 0, 1] = self.entry(s)
        return out

    def xval(self, s):
        s = np.asarray(s, dtype=complex)
        out = np.zeros(s.shape + (2, 2), dtype=complex)
        if self.entry_dx is not None:
            out[..., 0, 1] = self.entry_dx(s)
        return out


class TriL(Factor):
    """[[1, 0],[e(s), 1]]."""

    def __init__(self, entry, entry_dx=None):
        self.entry = entry
        self.entry_dx = entry_dx

    def value(self, s):
        s = np.asarray(s, dtype=complex)
        out = np.zeros(s.shape + (2, 2), dtype=complex)
        out[..., 0, 0] = out[..., 1, 1] = 1.0
        out[..., 1, 0] = self.entry(s)
        return out

    def xval(self, s):
        s = np.asarray(s, dtype=complex)
        out = np.zeros(s.shape + (2, 2), dtype=complex)
        if self.entry_dx is not None:
            out[..., 1, 0] = self.entry_dx(s)
        return out


class DiagMat(Factor):
    """diag(d(s), 1/d(s)); x-independent."""

    def __init__(self, dfun):
        self.dfun = dfun

    def value(self, s):
        s = np.asarray(s, dtype=complex)
        out = np.zeros(s.shape + (2, 2), dtype=complex)
        d = self.dfun(s)
        out[..., 0, 0] = d
        out[..., 1, 1] = 1.0 / d
        return out


class FullMat(Factor):
    """Arbitrary matrix function with optional x-derivative."""

    def __init__(self, fun, fun_dx=None):
        self.fun = fun
        self.fun_dx = fun_dx

    def value(self, s):
        return np.asarray(self.fun(np.asarray(s, dtype=complex)), dtype=complex)

    def xval(self, s):
        s = np.asarray(s, dtype=complex)
        if self.fun_dx is None:
            return np.zeros(s.shape + (2, 2), dtype=complex)
        return np.asarray(self.fun_dx(s), dtype=complex)


class Expr:
    """Ordered product prod_i F_i^{p_i} (p_i = +-1)."""

    def __init__(self, terms=()):
        self.terms = list(terms)

    @staticmethod
    def identity():
        return Expr([])

    def __mul__(self, other):
        return Expr(self.terms + other.terms)

    def inv(self):
        return Expr([(f, -p) for f, p in reversed(self.terms)])

    def value(self, s):
        s = np.asarray(s, dtype=complex)
        out = np.broadcast_to(np.eye(2, dtype=complex), s.shape + (2, 2)).copy()
        for f, p in self.terms:
            V = f.value(s)
            out = out @ (V if p == 1 else inv2(V))
        return out

    def value_and_dx(self, s):
        s = np.asarray(s, dtype=complex)
        vals, dxs = [], []
        for f, p in self.terms:
            V = f.value(s)
            D = f.xval(s)
            if p == -1:
                Vi = inv2(V)
                D = -(Vi @ D @ Vi)
                V = Vi
            vals.append(V)
            dxs.append(D)
        n = len(vals)
        eye = np.broadcast_to(np.eye(2, dtype=complex), s.shape + (2, 2)).copy()
        if n == 0:
            return eye, np.zeros(s.shape + (2, 2), dtype=complex)
        # prefix/suffix products for the product rule
        pre = [eye]
        for V in vals:
            pre.append(pre[-1] @ V)
        suf = [eye]
        for V in reversed(vals):
            suf.append(V @ suf[-1])
        suf = suf[::-1]
        total = pre[-1]
        dtot = np.zeros_like(total)
        for i in range(n):
            dtot = dtot + pre[i] @ dxs[i] @ suf[i + 1]
        return total, dtot


def expr_of(*factors):
    """Expr from factors or (factor, power) tuples."""
    terms = []
    for f in factors:
        if isinstance(f, tuple):
            terms.append(f)
        else:
            terms.append((f, 1))
    return Expr(terms)


def sigma_conjugate_expr(expr, make_negated):
    """Expression s -> sigma1 * expr(-s) * sigma1 as a FullMat wrapper.

    make_negated is unused hook kept for clarity; evaluation simply feeds
    -s to the inner expression.
    """
    inner = expr

    def fun(s):
        V = inner.value(-np.asarray(s, dtype=complex))
        return SIGMA1 @ V @ SIGMA1

    def fun_dx(s):
        _, D = inner.value_and_dx(-np.asarray(s, dtype=complex))
        return SIGMA1 @ D @ SIGMA1

    return expr_of(FullMat(fun, fun_dx))
