"""Best Levy-metric approximations by finitely supported measures.

Three problems are solved: weights for fixed atom positions, positions for
fixed weights, and the fully unconstrained problem.  The first two reduce to
per-cell envelope penalties (``ell``); the third finds the smallest inflation
``a`` whose covering map pushes 0 past 1 in ``n`` steps.
"""

from __future__ import annotations

import math

import numpy as np

from .distributions import Dist, FiniteMeasure, InvalidInputError
from .metrics import INF, MonotoneFn, ell, ell_star, levy_distance
from .numerics import DEFAULT_TOL, bisect_predicate, bisect_root
from .results import ApproxResult, Diagnostics, LevyCertificate


def uniform_weights(n: int) -> np.ndarray:
    return np.full(n, 1.0 / n)


def positions_condition_slacks(mu: Dist, x: np.ndarray, P: np.ndarray,
                               level: float, tol: float = DEFAULT_TOL) -> tuple[float, ...]:
    """Residuals of the fixed-positions optimality test: all <= 0 at an optimum."""
    f = MonotoneFn.from_cdf(mu)
    xs = np.concatenate([[-INF], np.asarray(x, dtype=float), [INF]])
    out = []
    for j in range(len(xs) - 1):
        if xs[j] < xs[j + 1]:
            out.append(ell(f, (xs[j], xs[j + 1]), P[j], tol) - level)
    return tuple(out)


def weights_condition_slacks(mu: Dist, x: np.ndarray, P: np.ndarray,
                             level: float, tol: float = DEFAULT_TOL) -> tuple[float, ...]:
    """Residuals of the fixed-weights optimality test: all <= 0 at an optimum."""
    f = MonotoneFn.from_quantile(mu)
    out = []
    for j in range(1, len(P)):
        if P[j - 1] < P[j]:
            out.append(ell(f, (P[j - 1], P[j]), float(x[j - 1]), tol) - level)
    return tuple(out)


def _position_boxes(mu: Dist, P: np.ndarray, level: float):
    boxes = []
    for j in range(1, len(P)):
        lo = mu.quantile_left(P[j] - level) - level
        hi_arg = P[j - 1] + level
        hi = INF if hi_arg >= 1.0 and math.isinf(mu.sup_support) \
            else mu.quantile(hi_arg) + level
        boxes.append((lo, hi))
    return tuple(boxes)


def _inner_midpoint(lo: float, hi: float) -> float:
    # Canonical representative inside an optimality interval; an unbounded
    # right end falls back to the left end.
    if math.isinf(hi):
        return lo
    return 0.5 * (lo + hi)


def best_given_positions(mu: Dist, x, tol: float = DEFAULT_TOL) -> ApproxResult:
    """Optimal weights for prescribed atom positions."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if len(x) == 0:
        raise InvalidInputError("need at least one position")
    if np.any(np.diff(x) < 0):
        x = np.sort(x)
    n = len(x)
    f = MonotoneFn.from_cdf(mu)
    terms = [ell(f, (-INF, x[0]), 0.0, tol)]
    for j in range(n - 1):
        if x[j] < x[j + 1]:
            terms.append(ell_star(f, (x[j], x[j + 1]), tol).value)
    terms.append(ell(f, (x[-1], INF), 1.0, tol))
    level = max(terms)

    Q = np.empty(n + 1)
    Q[0], Q[-1] = 0.0, 1.0
    for j in range(1, n):
        Q[j] = 0.5 * (mu.cdf_left(x[j] - level) + mu.cdf(x[j - 1] + level))
    Q = np.clip(np.maximum.accumulate(Q), 0.0, 1.0)
    Q[-1] = 1.0
    measure = FiniteMeasure(x, np.diff(Q))

    slacks = positions_condition_slacks(mu, x, Q, level, tol)
    boxes = tuple((mu.cdf_left(x[j] - level) - level, mu.cdf(x[j - 1] + level) + level)
                  for j in range(1, n))
    cert = LevyCertificate(level, "positions-given", slacks, boxes)
    return ApproxResult(measure, mu.omega * level, cert, Diagnostics())


def best_given_weights(mu: Dist, p, tol: float = DEFAULT_TOL) -> ApproxResult:
    """Optimal atom positions for prescribed weights."""
    m = FiniteMeasure(np.zeros(len(np.atleast_1d(p))), p).without_zero_weights()
    P = m.P
    n = m.n
    fq = MonotoneFn.from_quantile(mu)
    level = max(ell_star(fq, (P[j], P[j + 1]), tol).value for j in range(n))

    x = np.empty(n)
    for j in range(n):
        lo = mu.quantile_left(P[j + 1] - level)
        hi_arg = P[j] + level
        if hi_arg >= 1.0 and math.isinf(mu.sup_support):
            x[j] = lo
        else:
            x[j] = 0.5 * (lo + mu.quantile(hi_arg))
    x = np.maximum.accumulate(x)
    measure = FiniteMeasure(x, m.p)

    slacks = weights_condition_slacks(mu, x, P, level, tol)
    cert = LevyCertificate(level, "weights-given", slacks, _position_boxes(mu, P, level))
    return ApproxResult(measure, mu.omega * level, cert, Diagnostics())


def t_map(mu: Dist, a: float, x: float) -> float:
    """One step of the Levy covering map at inflation a."""
    if a < 0.0:
        raise InvalidInputError("inflation must be nonnegative")
    t = x + a
    if t < 0.0:
        return a
    if t >= 1.0:
        return 1.0 + a
    return mu.cdf(mu.quantile(t) + 2.0 * a) + a


def _t_orbit(mu: Dist, a: float, n: int) -> list[float]:
    vals = []
    v = 0.0
    for _ in range(n):
        v = t_map(mu, a, v)
        vals.append(v)
        if v >= 1.0:
            break
    return vals


def unconstrained_level(mu: Dist, n: int, tol: float = DEFAULT_TOL) -> float:
    """Smallest inflation whose n-fold covering orbit from 0 reaches 1."""
    return bisect_predicate(lambda a: _t_orbit(mu, a, n)[-1] >= 1.0, 0.0, 0.5, tol)


def best_unconstrained(mu: Dist, n: int, tol: float = DEFAULT_TOL) -> ApproxResult:
    """Best approximation by a measure on at most n atoms."""
    if n < 1:
        raise InvalidInputError("n must be a positive integer")
    if mu.n_support() <= n:
        atoms = mu.atom_list()
        measure = FiniteMeasure([a[0] for a in atoms], [a[1] for a in atoms])
        cert = LevyCertificate(0.0, "unconstrained", (0.0,) * len(atoms))
        return ApproxResult(measure, 0.0, cert, Diagnostics())

    level = unconstrained_level(mu, n, tol)
    orbit = _t_orbit(mu, level, n)
    m = len(orbit)  # first index whose orbit value reaches 1
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

    slacks = (weights_condition_slacks(mu, x, Q, level, tol)
              + positions_condition_slacks(mu, x, Q, level, tol))
    cert = LevyCertificate(level, "unconstrained", slacks, _position_boxes(mu, Q, level))
    return ApproxResult(measure, mu.omega * level, cert, Diagnostics(iterations=m))


def benford_uniform_level(b: float, n: int, tol: float = DEFAULT_TOL) -> float:
    """Optimum level for uniform weights under the significand law.

    Unique root of 2L = b^(1-L) - b^(1+L-1/n); the largest weight cell is the
    binding one.
    """
    return bisect_root(lambda L: 2.0 * L - (b ** (1.0 - L) - b ** (1.0 + L - 1.0 / n)),
                       0.0, 0.5, tol)


def benford_unconstrained_level(b: float, n: int, tol: float = DEFAULT_TOL) -> float:
    """Unique positive root of b^(2nL) = (2L + b(b^L - b^-L)) / (2L + b^L - b^-L)."""
    def h(L):
        s = b ** L - b ** (-L)
        return b ** (2.0 * n * L) * (2.0 * L + s) - (2.0 * L + b * s)

    return bisect_predicate(lambda L: h(L) > 0.0, 0.0, 0.5, tol)


def benford_best_closed_form(b: float, n: int, tol: float = DEFAULT_TOL) -> ApproxResult:
    """Closed-form best approximation of the significand law on n atoms."""
    from .distributions import make_benford

    mu = make_benford(b)
    L = benford_unconstrained_level(b, n, tol)
    j = np.arange(1, n + 1)
    g = (b ** (2.0 * j * L) - 1.0) / (b ** (2.0 * L) - 1.0)
    x = b ** ((2.0 * j - 1.0) * L) + 2.0 * L * g - L
    P = np.concatenate([[0.0], np.log(x + L) / math.log(b) + L])
    P[-1] = 1.0
    measure = FiniteMeasure(x, np.diff(P))
    slacks = (weights_condition_slacks(mu, x, P, L, tol)
              + positions_condition_slacks(mu, x, P, L, tol))
    cert = LevyCertificate(L, "unconstrained", slacks, _position_boxes(mu, P, L))
    return ApproxResult(measure, mu.omega * L, cert, Diagnostics())


def levy_coefficient_check(mu: Dist, mode: str, n_list,
                           tol: float = DEFAULT_TOL) -> list[tuple[int, float]]:
    """(n, n * distance) pairs for convergence diagnostics."""
    out = []
    for n in n_list:
        if mode == "best":
            d = best_unconstrained(mu, n, tol).distance
        elif mode == "uniform":
            d = best_given_weights(mu, uniform_weights(n), tol).distance
        else:
            raise InvalidInputError(f"unknown mode {mode!r}")
        out.append((n, n * d))
    return out


def recompute_distance(mu: Dist, result: ApproxResult) -> float:
    """Independent re-evaluation of the distance of a returned measure."""
    return levy_distance(mu, result.measure)
