"""Best L^r transport approximations by finitely supported measures.

Fixed-position and fixed-weight problems have interval optimality conditions
(weights cut at position midpoints, atoms at generalized cell medians).  The
unconstrained problem couples the two; it is solved by monotone shooting where
uniqueness is available (r = 1 on smooth laws, any r for the significand law)
and by a damped alternating iteration otherwise.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.special import gammainc, gammaln

from .distributions import (
    Benford,
    Beta21,
    Dist,
    Exponential,
    FiniteMeasure,
    Interval,
    InvalidInputError,
    InvalidParameterError,
    finite_to_dist,
    make_benford,
)
from .metrics import quantile_lr_norm
from .numerics import (
    DEFAULT_TOL,
    CumulativeIntegral,
    NonConvergenceError,
    adaptive_simpson,
    bisect_predicate,
    bisect_root,
    composite_simpson,
    expand_bracket,
)
from .results import ApproxResult, Diagnostics, KantorovichCertificate, LloydState


def uniform_weights(n: int) -> np.ndarray:
    return np.full(n, 1.0 / n)


def dr_distance(mu: Dist, m: FiniteMeasure, r: float = 1.0) -> float:
    """Transport distance from mu to a finite measure (normalized on bounded support)."""
    support = mu.support
    if not (support.contains(m.x[0]) and support.contains(m.x[-1])):
        support = Interval(min(support.lo, m.x[0]), max(support.hi, m.x[-1]))
    nu = finite_to_dist(m, support)
    norm = quantile_lr_norm(mu, nu, r)
    lam = mu.support.length
    return norm if math.isinf(lam) else norm / lam


def weight_condition_slacks_dr(mu: Dist, x: np.ndarray, P: np.ndarray) -> tuple[float, ...]:
    """Midpoint-cut residuals for interior cumulative weights; <= 0 at an optimum."""
    x = np.asarray(x, dtype=float)
    out = []
    for j in range(1, len(x)):
        if x[j - 1] < x[j]:
            mid = 0.5 * (x[j - 1] + x[j])
            out.append(max(mu.cdf_left(mid) - P[j], P[j] - mu.cdf(mid)))
    return tuple(out)


def position_condition_slacks_d1(mu: Dist, x: np.ndarray, P: np.ndarray) -> tuple[float, ...]:
    """Generalized-median residuals for atom positions (r = 1); <= 0 at an optimum."""
    out = []
    for j in range(1, len(P)):
        if P[j - 1] < P[j]:
            mid = 0.5 * (P[j - 1] + P[j])
            lo = mu.quantile_left(mid)
            hi = mu.quantile(mid)
            out.append(max(lo - x[j - 1], x[j - 1] - hi))
    return tuple(out)


def _one_sided(mu: Dist, c: float, y0: float, y1: float, s: float, side: str,
               rel_tol: float = 1e-11) -> float:
    """integral of (c - q)^s (side='left', over q < c) or (q - c)^s (side='right')."""
    from .metrics import _beta_left, _beta_right
    ys = min(max(mu.cdf(c), y0), y1)
    if mu.fixed_quadrature_panels:
        panels = mu.fixed_quadrature_panels
        if side == "left":
            return composite_simpson(
                lambda y: max(c - mu.quantile(y), 0.0) ** s, y0, ys, panels)
        return composite_simpson(
            lambda y: max(mu.quantile(y) - c, 0.0) ** s, ys, y1, panels)
    if side == "left":
        a, b = y0, ys
        if b <= a:
            return 0.0
        if s == 1.0 and isinstance(mu, Benford):
            return c * (b - a) - (mu.b ** b - mu.b ** a) / math.log(mu.b)
        if isinstance(mu, Beta21):
            return 2.0 * (_beta_left(math.sqrt(b), c, s) - _beta_left(math.sqrt(a), c, s))
        return adaptive_simpson(lambda y: max(c - mu.quantile(y), 0.0) ** s, a, b, rel_tol)
    a, b = ys, y1
    if b <= a:
        return 0.0
    if isinstance(mu, Exponential):
        ua = -math.log1p(-a)
        ub = math.inf if b >= 1.0 else -math.log1p(-b)
        ga = math.exp(gammaln(s + 1.0) - c)
        hi = 1.0 if ub == math.inf else gammainc(s + 1.0, max(ub - c, 0.0))
        return ga * (hi - gammainc(s + 1.0, max(ua - c, 0.0)))
    if s == 1.0 and isinstance(mu, Benford):
        return (mu.b ** b - mu.b ** a) / math.log(mu.b) - c * (b - a)
    if isinstance(mu, Beta21):
        return 2.0 * (_beta_right(math.sqrt(b), c, s) - _beta_right(math.sqrt(a), c, s))
    return adaptive_simpson(lambda y: max(mu.quantile(y) - c, 0.0) ** s, a, b, rel_tol)


def mean_quantile(mu: Dist, y0: float, y1: float) -> float:
    """Average of the quantile over [y0, y1] (the r = 2 cell optimum)."""
    w = y1 - y0
    if isinstance(mu, Benford):
        return (mu.b ** y1 - mu.b ** y0) / (w * math.log(mu.b))
    if isinstance(mu, Beta21):
        return (2.0 / 3.0) * (y1 ** 1.5 - y0 ** 1.5) / w
    if isinstance(mu, Exponential):
        def F(y):
            return -(1.0 - y) * (1.0 - math.log1p(-y)) if y < 1.0 else 0.0
        return (F(y1) - F(y0)) / w
    if mu.fixed_quadrature_panels:
        return composite_simpson(mu.quantile, y0, y1, mu.fixed_quadrature_panels) / w
    return adaptive_simpson(lambda y: mu.quantile(y), y0, y1, 1e-12) / w


def cell_argmin(mu: Dist, y0: float, y1: float, r: float,
                tol: float = DEFAULT_TOL) -> float:
    """Position minimizing the cell cost integral of |quantile - c|^r."""
    if r == 1.0:
        return mu.quantile(0.5 * (y0 + y1))
    if r == 2.0:
        return mean_quantile(mu, y0, y1)

    def deriv(c):
        return (_one_sided(mu, c, y0, y1, r - 1.0, "left")
                - _one_sided(mu, c, y0, y1, r - 1.0, "right"))

    lo = mu.quantile(y0)
    hi = mu.quantile(min(y1 - 1e-15, 1.0 - 1e-15))
    if math.isinf(hi) or deriv(hi) < 0.0:
        width = max(hi - lo, 1.0) if math.isfinite(hi) else 1.0
        hi = lo + expand_bracket(lambda w: deriv(lo + w) > 0.0, width)
    if deriv(lo) >= 0.0:
        return lo
    return bisect_root(deriv, lo, hi, tol)


def best_given_positions_dr(mu: Dist, x, r: float = 1.0,
                            tol: float = DEFAULT_TOL) -> ApproxResult:
    """Optimal weights for prescribed positions: cut cells at position midpoints.

    The midpoint cut is optimal for every order r.
    """
    x = np.sort(np.atleast_1d(np.asarray(x, dtype=float)))
    n = len(x)
    P = np.empty(n + 1)
    P[0], P[-1] = 0.0, 1.0
    for j in range(1, n):
        P[j] = mu.cdf(0.5 * (x[j - 1] + x[j]))
    P = np.clip(np.maximum.accumulate(P), 0.0, 1.0)
    P[-1] = 1.0
    measure = FiniteMeasure(x, np.diff(P))
    cert = KantorovichCertificate("positions-given",
                                  weight_condition_slacks_dr(mu, x, P), "global")
    return ApproxResult(measure, dr_distance(mu, measure, r), cert, Diagnostics())


def best_given_positions_d1(mu: Dist, x, tol: float = DEFAULT_TOL) -> ApproxResult:
    return best_given_positions_dr(mu, x, 1.0, tol)


def best_given_weights_dr(mu: Dist, p, r: float = 1.0,
                          tol: float = DEFAULT_TOL) -> ApproxResult:
    """Optimal positions for prescribed weights (generalized cell medians)."""
    m = FiniteMeasure(np.zeros(len(np.atleast_1d(p))), p).without_zero_weights()
    P = m.P
    x = np.array([cell_argmin(mu, P[j], P[j + 1], r) for j in range(m.n)])
    measure = FiniteMeasure(np.maximum.accumulate(x), m.p)
    slacks = position_condition_slacks_d1(mu, x, P) if r == 1.0 else ()
    cert = KantorovichCertificate("weights-given", slacks, "global")
    return ApproxResult(measure, dr_distance(mu, measure, r), cert, Diagnostics())


def best_given_weights_d1(mu: Dist, p, tol: float = DEFAULT_TOL) -> ApproxResult:
    return best_given_weights_dr(mu, p, 1.0, tol)


def benford_best_d1(b: float, n: int) -> ApproxResult:
    """Closed-form best transport approximation of the significand law."""
    mu = make_benford(b)
    j = np.arange(1, n + 1)
    s = math.sqrt(b) - 1.0
    x = (1.0 + (j - 1) / n * s) * (1.0 + j / n * s)
    P = np.concatenate([[0.0], 2.0 / math.log(b) * np.log(1.0 + j / n * s)])
    P[-1] = 1.0
    measure = FiniteMeasure(x, np.diff(P))
    distance = math.tanh(math.log(b) / 4.0) / (n * math.log(b))
    slacks = (weight_condition_slacks_dr(mu, x, P)
              + position_condition_slacks_d1(mu, x, P))
    cert = KantorovichCertificate("unconstrained", slacks, "global")
    return ApproxResult(measure, distance, cert, Diagnostics())


def _shoot_d1(mu: Dist, n: int, tol: float) -> tuple[np.ndarray, np.ndarray]:
    """Monotone shooting on the interleaved r = 1 optimality recursion.

    Propagates P_j = 2 F(x_j) - P_{j-1} and x_{j+1} = 2 F^{-1}(P_j) - x_j from
    a guessed first atom; the terminal cumulative weight is increasing in the
    guess, so its unit level set is found by bisection.
    """
    lo_supp = mu.inf_support
    hi_supp = mu.sup_support

    def propagate(x1):
        xs = [x1]
        P = [0.0]
        for j in range(n):
            Pj = 2.0 * mu.cdf(xs[-1]) - P[-1]
            if Pj >= 1.0 and j < n - 1:
                return None, None, 1.0 + (n - 1 - j)  # overshoot
            P.append(min(Pj, 1.0 + 1e-9))
            if j < n - 1:
                xs.append(2.0 * mu.quantile(min(max(Pj, 0.0), 1.0 - 1e-16)) - xs[-1])
        return np.array(xs), np.array(P), P[-1] - 1.0

    def residual(x1):
        return propagate(x1)[2]

    lo = lo_supp + 1e-14 * max(1.0, abs(lo_supp))
    if math.isinf(hi_supp):
        hi = expand_bracket(lambda w: residual(lo + w) > 0.0, 1.0)
        hi = lo + hi
    else:
        hi = hi_supp - 1e-14 * max(1.0, abs(hi_supp))
    x1 = bisect_root(residual, lo, hi, tol * max(1.0, abs(hi - lo)))
    xs, P, _ = propagate(x1)
    if xs is None:
        raise NonConvergenceError("shooting propagation failed", None)
    P[-1] = 1.0
    return np.maximum.accumulate(xs), np.clip(np.maximum.accumulate(P), 0.0, 1.0)


def _alternate(mu: Dist, n: int, r: float, tol: float, max_iter: int):
    """Damped alternating updates of positions and midpoint-cut weights."""
    P = np.linspace(0.0, 1.0, n + 1)
    x = np.array([cell_argmin(mu, P[j], P[j + 1], r) for j in range(n)])
    prev_delta = math.inf
    damp = 1.0
    for it in range(1, max_iter + 1):
        P_new = P.copy()
        for j in range(1, n):
            P_new[j] = mu.cdf(0.5 * (x[j - 1] + x[j]))
        P_new = np.clip(np.maximum.accumulate(P_new), 0.0, 1.0)
        P_new[0], P_new[-1] = 0.0, 1.0
        x_new = np.array([cell_argmin(mu, P_new[j], P_new[j + 1], r) for j in range(n)])
        delta = max(float(np.max(np.abs(x_new - x))), float(np.max(np.abs(P_new - P))))
        if delta > prev_delta:  # oscillation: damp the step
            damp = 0.5
        x = damp * x_new + (1.0 - damp) * x
        P = damp * P_new + (1.0 - damp) * P
        prev_delta = delta
        if delta <= tol:
            return np.maximum.accumulate(x), P, it, delta
    raise NonConvergenceError(
        f"alternating iteration did not reach {tol} in {max_iter} steps",
        LloydState(x, P, prev_delta, max_iter))


def best_dr_general(mu: Dist, n: int, r: float = 1.0, mode: str = "unconstrained",
                    tol: float = 1e-10, max_iter: int = 100_000) -> ApproxResult:
    """Best (or best uniform) L^r approximation of a general distribution."""
    if not r >= 1.0:
        raise InvalidParameterError("order r must satisfy r >= 1")
    if n < 1:
        raise InvalidInputError("n must be a positive integer")
    known_unique = isinstance(mu, (Benford, Beta21, Exponential))

    if mode == "uniform":
        P = np.linspace(0.0, 1.0, n + 1)
        x = np.maximum.accumulate(
            np.array([cell_argmin(mu, P[j], P[j + 1], r) for j in range(n)]))
        measure = FiniteMeasure(x, uniform_weights(n))
        slacks = position_condition_slacks_d1(mu, x, P) if r == 1.0 else ()
        cert = KantorovichCertificate("uniform", slacks,
                                      "global" if (known_unique or r > 1.0) else "stationary")
        return ApproxResult(measure, dr_distance(mu, measure, r), cert, Diagnostics())

    if mode != "unconstrained":
        raise InvalidInputError(f"unknown mode {mode!r}")

    smooth = mu.atomless and mu.strictly_increasing
    if not smooth and mu.n_support() > n:
        raise InvalidInputError(
            "unconstrained transport solver needs a continuous, strictly "
            "increasing cdf; use the grid oracle for atomic laws")

    if r == 1.0:
        x, P = _shoot_d1(mu, n, tol=min(tol, DEFAULT_TOL))
        iterations, residual = n, 0.0
    else:
        x, P, iterations, residual = _alternate(mu, n, r, tol, max_iter)
    measure = FiniteMeasure(x, np.diff(P))
    slacks = weight_condition_slacks_dr(mu, x, P)
    if r == 1.0:
        slacks = slacks + position_condition_slacks_d1(mu, x, P)
    cert = KantorovichCertificate("unconstrained", slacks,
                                  "global" if known_unique else "stationary")
    return ApproxResult(measure, dr_distance(mu, measure, r), cert,
                        LloydState(x, P, residual, iterations))


class GaFunction:
    """Cumulative integral of (z-1)^(r-1) / (z^a (z+1)) from 1, with inverse."""

    def __init__(self, a: float, r: float, zmax: float):
        self.a = float(a)
        self.r = float(r)
        self.zmax = float(zmax)
        self._cum = CumulativeIntegral(
            lambda z: (z - 1.0) ** (self.r - 1.0) / (z ** self.a * (z + 1.0)),
            1.0, self.zmax)

    def __call__(self, x: float) -> float:
        if x > self.zmax:
            raise InvalidParameterError("argument beyond tabulated range")
        return self._cum(x)

    @property
    def max_value(self) -> float:
        return self._cum(self.zmax)

    def inverse(self, v: float, tol: float = DEFAULT_TOL) -> float:
        return self._cum.inverse(v, tol)


def benford_best_dr_shooting(b: float, n: int, r: float,
                             tol: float = DEFAULT_TOL,
                             bracket: tuple[float, float] | None = None) -> ApproxResult:
    """Unique best L^r approximation of the significand law, r > 1.

    Shoots on the first atom: each cell equation transfers through the strictly
    increasing ratio integrals, and the terminal closure is monotone in the
    first atom, so the root is found by bisection.
    """
    if not (b > 1.0 and r > 1.0):
        raise InvalidParameterError("need b > 1 and r > 1")
    mu = make_benford(b)
    g0 = GaFunction(0.0, r, 2.0 * b)
    gr = GaFunction(r, r, 2.0 * b)
    first = CumulativeIntegral(lambda z: (z - 1.0) ** (r - 1.0) / z ** r, 1.0, b)
    pow2 = 2.0 ** (1.0 - r)
    big = 1e6

    def propagate(x1):
        xs = [x1]
        if n == 1:
            return xs, first(x1) - pow2 * g0((2.0 * b - x1) / x1)
        v = first(x1) / pow2  # transfer through the first cell equation
        if v >= g0.max_value:
            return xs, big
        xs.append(x1 * g0.inverse(v))
        for _ in range(2, n):
            w = gr(min(xs[-1] / xs[-2], 2.0 * b))
            if w >= g0.max_value:
                return xs, big
            xs.append(xs[-1] * g0.inverse(w))
        xn, xm = xs[-1], xs[-2]
        if xn >= 2.0 * b:
            return xs, big
        terminal = g0(max((2.0 * b - xn) / xn, 1.0)) if xn <= b else 0.0
        return xs, gr(min(xn / xm, 2.0 * b)) - terminal

    lo, hi = bracket if bracket is not None else (1.0, b)
    x1 = bisect_predicate(lambda t: propagate(t)[1] > 0.0, lo, hi, tol)
    xs, _ = propagate(x1)
    x = np.maximum.accumulate(np.array(xs))
    P = np.empty(n + 1)
    P[0], P[-1] = 0.0, 1.0
    for j in range(1, n):
        P[j] = math.log(0.5 * (x[j - 1] + x[j])) / math.log(b)
    P = np.clip(np.maximum.accumulate(P), 0.0, 1.0)
    measure = FiniteMeasure(x, np.diff(P))
    cert = KantorovichCertificate("unconstrained",
                                  weight_condition_slacks_dr(mu, x, P), "global")
    return ApproxResult(measure, dr_distance(mu, measure, r), cert,
                        Diagnostics(iterations=n))


def best_fortet_mourier(mu: Dist, n: int, r: float = 1.0,
                        mode: str = "unconstrained") -> ApproxResult:
    """Best Fortet-Mourier approximation via the power-map transfer.

    The distance equals a scaled transport distance between the pushforwards
    under x -> x^r, so the optimum is the pullback of the best transport
    approximation of the pushforward law.
    """
    from .metrics import fortet_mourier, power_pushforward
    if mu.support.lo < 1.0:
        raise InvalidInputError("Fortet-Mourier approximation needs support in [1, inf)")
    mu_t = power_pushforward(mu, r)
    if mode == "uniform":
        res_t = best_dr_general(mu_t, n, 1.0, "uniform")
    elif mode == "unconstrained":
        res_t = best_dr_general(mu_t, n, 1.0, "unconstrained")
    else:
        raise InvalidInputError(f"unknown mode {mode!r}")
    x = res_t.measure.x ** (1.0 / r)
    measure = FiniteMeasure(x, res_t.measure.p)
    from .distributions import finite_to_dist as _ftd
    nu = _ftd(measure, mu.support)
    return ApproxResult(measure, fortet_mourier(mu, nu, r), res_t.certificate,
                        res_t.diagnostics)


def asymptotic_dr_family(b: float, n: int, r: float, mode: str) -> FiniteMeasure:
    """Closed-form families whose cost ratio to the optimum tends to 1."""
    if not (b > 1.0 and r > 1.0):
        raise InvalidParameterError("need b > 1 and r > 1")
    j = np.arange(1, n + 1)
    if mode == "uniform":
        return FiniteMeasure(b ** ((2.0 * j - 1.0) / (2.0 * n)), uniform_weights(n))
    if mode != "unconstrained":
        raise InvalidInputError(f"unknown mode {mode!r}")
    s = b ** (r / (r + 1.0)) - 1.0
    x = (1.0 + j / (n + 1.0) * s) ** (1.0 + 1.0 / r)
    P = np.empty(n + 1)
    P[0], P[-1] = 0.0, 1.0
    for k in range(1, n):
        P[k] = math.log(0.5 * (x[k - 1] + x[k])) / math.log(b)
    P = np.clip(np.maximum.accumulate(P), 0.0, 1.0)
    return FiniteMeasure(x, np.diff(P))
