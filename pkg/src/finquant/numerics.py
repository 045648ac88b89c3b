"""Scalar bisection and quadrature helpers shared by the solvers.

All root finding in this package is plain bisection: every solved equation is
monotone (often only one-sidedly continuous, e.g. thresholds of step maps), so
bisection is the one method that is always correct here.  Derivative-based
iterations are deliberately avoided.
"""

from __future__ import annotations

from typing import Callable

import numpy as np

DEFAULT_TOL = 1e-13


class NonConvergenceError(RuntimeError):
    """Raised when an iterative solver fails; carries the last state."""

    def __init__(self, message, state=None):
        super().__init__(message)
        self.state = state


def bisect_predicate(pred: Callable[[float], bool], lo: float, hi: float,
                     tol: float = DEFAULT_TOL) -> float:
    """Smallest y in [lo, hi] with pred(y) true.

    Requires pred monotone (false then true) and pred(hi) true; the returned
    point always satisfies the predicate, so threshold quantities of the form
    min{y >= 0 : condition(y)} come out on the feasible side.
    """
    if pred(lo):
        return lo
    if not pred(hi):
        raise ValueError("predicate is false on the whole bracket")
    for _ in range(256):
        if hi - lo <= tol:
            break
        mid = 0.5 * (lo + hi)
        if pred(mid):
            hi = mid
        else:
            lo = mid
    return hi


def bisect_root(f: Callable[[float], float], lo: float, hi: float,
                tol: float = DEFAULT_TOL) -> float:
    """Root of f on [lo, hi] by bisection; f(lo) and f(hi) must differ in sign."""
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if (flo > 0) == (fhi > 0):
        raise ValueError(f"no sign change on bracket [{lo}, {hi}]")
    for _ in range(256):
        if hi - lo <= tol:
            break
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if fm == 0.0:
            return mid
        if (fm > 0) == (flo > 0):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def expand_bracket(pred: Callable[[float], bool], hi: float = 1.0,
                   factor: float = 2.0, max_hi: float = 1e12) -> float:
    """Grow hi geometrically until a monotone predicate becomes true."""
    while not pred(hi):
        hi *= factor
        if hi > max_hi:
            raise ValueError("monotone predicate never satisfied; unbounded input?")
    return hi


def adaptive_simpson(f: Callable[[float], float], a: float, b: float,
                     rel_tol: float = 1e-10, abs_floor: float = 1e-15,
                     max_depth: int = 48) -> float:
    """Adaptive Simpson quadrature of f on [a, b]."""
    if b <= a:
        return 0.0
    fa, fb = f(a), f(b)
    m = 0.5 * (a + b)
    fm = f(m)
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    tol = max(abs(whole) * rel_tol, abs_floor)
    return _asr(f, a, fa, b, fb, m, fm, whole, tol, max_depth)


def composite_simpson(f: Callable[[float], float], a: float, b: float,
                      panels: int = 2048) -> float:
    """Fixed-resolution composite Simpson rule; bounded cost on rough integrands."""
    if b <= a:
        return 0.0
    xs = np.linspace(a, b, 2 * panels + 1)
    vals = np.array([f(float(x)) for x in xs])
    h = (b - a) / panels
    return float(h / 6.0 * (vals[0] + vals[-1] + 4.0 * vals[1::2].sum()
                            + 2.0 * vals[2:-1:2].sum()))


def _asr(f, a, fa, b, fb, m, fm, whole, tol, depth):
    lm = 0.5 * (a + m)
    rm = 0.5 * (m + b)
    flm, frm = f(lm), f(rm)
    left = (m - a) / 6.0 * (fa + 4.0 * flm + fm)
    right = (b - m) / 6.0 * (fm + 4.0 * frm + fb)
    delta = left + right - whole
    if depth <= 0 or abs(delta) <= 15.0 * tol:
        return left + right + delta / 15.0
    half = 0.5 * tol
    return (_asr(f, a, fa, m, fm, lm, flm, left, half, depth - 1)
            + _asr(f, m, fm, b, fb, rm, frm, right, half, depth - 1))


_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(16)


class CumulativeIntegral:
    """x -> integral of a nonnegative kernel from a to x, on a graded panel mesh.

    The mesh refines geometrically toward a so kernels with an algebraic
    endpoint weakness, like (z - a)^(r-1) with 1 < r < 2, are still integrated
    to near machine accuracy; Gauss nodes never touch the endpoint itself.
    """

    def __init__(self, kernel, a: float, b: float, n_uniform: int = 256,
                 graded_from: float = 1e-12, ratio: float = 1.25):
        if b <= a:
            raise ValueError("empty integration range")
        edges = [a]
        step = graded_from * (b - a)
        x = a + step
        while x < b and step < (b - a) / n_uniform:
            edges.append(x)
            step *= ratio
            x += step
        edges.extend(np.linspace(edges[-1], b, n_uniform + 1)[1:])
        self.a = a
        self.b = b
        self.edges = np.asarray(edges)
        mid = 0.5 * (self.edges[1:] + self.edges[:-1])
        half = 0.5 * (self.edges[1:] - self.edges[:-1])
        pts = mid[:, None] + half[:, None] * _GL_NODES[None, :]
        vals = kernel(pts)
        self._panel = (vals @ _GL_WEIGHTS) * half
        self._cum = np.concatenate([[0.0], np.cumsum(self._panel)])
        self._kernel = kernel

    def __call__(self, x: float) -> float:
        if x <= self.a:
            return 0.0
        x = min(x, self.b)
        k = int(np.searchsorted(self.edges, x, side="right")) - 1
        k = min(k, len(self.edges) - 2)
        lo = self.edges[k]
        total = self._cum[k]
        if x > lo:
            mid = 0.5 * (lo + x)
            half = 0.5 * (x - lo)
            pts = mid + half * _GL_NODES
            total += float(np.dot(self._kernel(pts), _GL_WEIGHTS)) * half
        return float(total)

    def inverse(self, v: float, tol: float = DEFAULT_TOL) -> float:
        """Solve self(x) = v for x; v must lie in [0, self(b)]."""
        if v <= 0.0:
            return self.a
        k = int(np.searchsorted(self._cum, v, side="left"))
        if k >= len(self.edges):
            return self.b
        lo = self.edges[max(k - 1, 0)]
        hi = self.edges[k]
        return bisect_root(lambda x: self(x) - v, lo, hi, tol)


def simplex_grid(n_parts: int, steps: int) -> np.ndarray:
    """All cumulative-weight vectors (P_1, ..., P_{n-1}) on a uniform grid.

    Returns an array of shape (m, n_parts - 1) with nondecreasing rows drawn
    from {0, 1/steps, ..., 1}.
    """
    ticks = np.linspace(0.0, 1.0, steps + 1)
    if n_parts == 1:
        return np.zeros((1, 0))
    if n_parts == 2:
        return ticks[:, None]
    grids = np.meshgrid(*([ticks] * (n_parts - 1)), indexing="ij")
    stacked = np.stack([g.ravel() for g in grids], axis=1)
    keep = np.all(np.diff(stacked, axis=1) >= 0.0, axis=1)
    return stacked[keep]
