"""Best Kolmogorov-metric approximations by finitely supported measures.

Mirrors the Levy solver: fixed positions reduce to a closed-form max of cdf
gaps, fixed weights place atoms at cell-midpoint quantiles, and the
unconstrained optimum is the smallest inflation whose (non-shifting) covering
map pushes 0 past 1 in n steps.
"""

from __future__ import annotations

import math

import numpy as np

from .distributions import Dist, FiniteMeasure, InvalidInputError
from .metrics import kolmogorov_distance
from .numerics import DEFAULT_TOL, bisect_predicate
from .results import ApproxResult, Diagnostics, KolmogorovCertificate


def positions_condition_slacks_K(mu: Dist, x: np.ndarray, P: np.ndarray,
                                 level: float) -> tuple[float, ...]:
    """Residuals of the fixed-positions band test; all <= 0 at an optimum."""
    x = np.asarray(x, dtype=float)
    n = len(x)
    out = []
    for j in range(n + 1):
        lo_gap = x[j - 1] if j >= 1 else -math.inf
        hi_gap = x[j] if j < n else math.inf
        if lo_gap < hi_gap:
            upper = 1.0 if j == n else mu.cdf_left(x[j])
            lower = 0.0 if j == 0 else mu.cdf(x[j - 1])
            out.append(max(upper - level - P[j], P[j] - lower - level))
    return tuple(out)


def weights_condition_slacks_K(mu: Dist, x: np.ndarray, P: np.ndarray,
                               level: float) -> tuple[float, ...]:
    """Residuals of the fixed-weights band test; all <= 0 at an optimum."""
    out = []
    for j in range(1, len(P)):
        if P[j - 1] < P[j]:
            lo = mu.quantile_left(P[j] - level)
            hi_arg = P[j - 1] + level
            hi = math.inf if hi_arg >= 1.0 and math.isinf(mu.sup_support) \
                else mu.quantile(hi_arg)
            out.append(max(lo - x[j - 1], x[j - 1] - hi))
    return tuple(out)


def _weight_boxes(mu: Dist, x: np.ndarray, level: float):
    n = len(x)
    boxes = []
    for j in range(1, n):
        boxes.append((mu.cdf_left(x[j]) - level, mu.cdf(x[j - 1]) + level))
    return tuple(boxes)


def best_given_positions_K(mu: Dist, x, tol: float = DEFAULT_TOL) -> ApproxResult:
    """Optimal weights for prescribed atom positions."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if len(x) == 0:
        raise InvalidInputError("need at least one position")
    x = np.sort(x)
    n = len(x)
    gaps = [mu.cdf_left(x[j + 1]) - mu.cdf(x[j]) for j in range(n - 1)]
    level = max([mu.cdf_left(x[0]), 1.0 - mu.cdf(x[-1])]
                + [0.5 * g for g in gaps])

    Q = np.empty(n + 1)
    Q[0], Q[-1] = 0.0, 1.0
    for j in range(1, n):
        Q[j] = 0.5 * (mu.cdf(x[j - 1]) + mu.cdf_left(x[j]))
    Q = np.clip(np.maximum.accumulate(Q), 0.0, 1.0)
    Q[-1] = 1.0
    measure = FiniteMeasure(x, np.diff(Q))
    cert = KolmogorovCertificate(level, "positions-given",
                                 positions_condition_slacks_K(mu, x, Q, level),
                                 _weight_boxes(mu, x, level),
                                 distinct_positions=bool(np.all(np.diff(x) > 0)))
    return ApproxResult(measure, level, cert, Diagnostics())


def best_given_weights_K(mu: Dist, p, tol: float = DEFAULT_TOL) -> ApproxResult:
    """Optimal atom positions for prescribed weights.

    Atoms sit at the cell-midpoint quantiles; this placement attains the
    optimum even when the per-cell sup-deviation has no minimizer.
    """
    m = FiniteMeasure(np.zeros(len(np.atleast_1d(p))), p).without_zero_weights()
    P = m.P
    x = np.array([mu.quantile(0.5 * (P[j] + P[j + 1])) for j in range(m.n)])
    measure = FiniteMeasure(x, m.p)
    level = kolmogorov_distance(mu, measure)
    cert = KolmogorovCertificate(level, "weights-given",
                                 weights_condition_slacks_K(mu, x, P, level),
                                 distinct_positions=bool(np.all(np.diff(x) > 0)))
    return ApproxResult(measure, level, cert, Diagnostics())


def s_map(mu: Dist, a: float, x: float) -> float:
    """One step of the Kolmogorov covering map at inflation a."""
    if a < 0.0:
        raise InvalidInputError("inflation must be nonnegative")
    t = x + a
    if t < 0.0:
        return a
    if t >= 1.0:
        return 1.0 + a
    return mu.cdf(mu.quantile(t)) + a


def _s_orbit(mu: Dist, a: float, n: int) -> list[float]:
    vals = []
    v = 0.0
    for _ in range(n):
        v = s_map(mu, a, v)
        vals.append(v)
        if v >= 1.0:
            break
    return vals


def unconstrained_level_K(mu: Dist, n: int, tol: float = DEFAULT_TOL) -> float:
    return bisect_predicate(lambda a: _s_orbit(mu, a, n)[-1] >= 1.0, 0.0, 0.5, tol)


def best_unconstrained_K(mu: Dist, n: int, tol: float = DEFAULT_TOL) -> ApproxResult:
    """Best approximation by a measure on at most n atoms."""
    if n < 1:
        raise InvalidInputError("n must be a positive integer")
    if mu.n_support() <= n:
        atoms = mu.atom_list()
        measure = FiniteMeasure([a[0] for a in atoms], [a[1] for a in atoms])
        cert = KolmogorovCertificate(0.0, "unconstrained", (0.0,) * len(atoms))
        return ApproxResult(measure, 0.0, cert, Diagnostics())

    level = unconstrained_level_K(mu, n, tol)
    orbit = _s_orbit(mu, level, n)
    m = len(orbit)
    Q = np.concatenate([[0.0], orbit[:m - 1], [1.0]])
    Q = np.clip(np.maximum.accumulate(Q), 0.0, 1.0)

    x = np.empty(m)
    for i in range(m):
        lo = mu.quantile_left(Q[i + 1] - level)
        hi_arg = Q[i] + level
        if hi_arg >= 1.0 and math.isinf(mu.sup_support):
            x[i] = lo
        else:
            x[i] = 0.5 * (lo + mu.quantile(hi_arg))
    x = np.maximum.accumulate(x)
    measure = FiniteMeasure(x, np.diff(Q))

    slacks = (weights_condition_slacks_K(mu, x, Q, level)
              + positions_condition_slacks_K(mu, x, Q, level))
    cert = KolmogorovCertificate(level, "unconstrained", slacks,
                                 distinct_positions=bool(np.all(np.diff(x) > 0)))
    return ApproxResult(measure, level, cert, Diagnostics(iterations=m))
