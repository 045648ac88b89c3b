"""Brute-force verification oracle.

Exhaustive grid search over atom positions and weights, with distances
evaluated by vectorized code written against the metric definitions (cdf
sandwich levels, cdf sup gaps, quantile-difference Riemann/Simpson sums) and
kept independent of the solvers it certifies.  Returned minima are upper
bounds on the true optimum, sharp to within one grid cell.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kantorovich, kolmogorov, levy
from .distributions import (
    Dist,
    FiniteMeasure,
    InvalidInputError,
    InvalidParameterError,
)
from .metrics import MetricKind
from .results import ApproxResult, Diagnostics

MAX_GRID = 10 ** 8


@dataclass(frozen=True)
class GridSpec:
    position_steps: int
    weight_steps: int
    n: int

    def __post_init__(self):
        if self.n > 3:
            raise InvalidParameterError("grid oracle supports n <= 3 only")
        if self.n < 1 or self.position_steps < 2 or self.weight_steps < 1:
            raise InvalidParameterError("degenerate grid")
        if self.total_size() > MAX_GRID:
            raise InvalidParameterError(f"grid larger than {MAX_GRID} candidates")

    def total_size(self) -> int:
        p, w, n = self.position_steps + 1, self.weight_steps + 1, self.n
        combos = math.comb(p, n)
        wcombos = math.comb(w + n - 2, n - 1) if n > 1 else 1
        return combos * wcombos


def _position_grid(mu: Dist, grid: GridSpec, extra=()):
    lo, hi = mu.inf_support, mu.sup_support
    if math.isinf(hi):
        raise InvalidInputError("grid oracle needs a bounded support")
    pts = list(np.linspace(lo, hi, grid.position_steps + 1))
    atoms = mu.atom_list()
    if len(atoms) <= 64:
        pts.extend(a[0] for a in atoms)
    pts.extend(extra)
    return np.unique(np.asarray(pts, dtype=float))


def _vector_threshold(pred, shape, hi0=1.0, iters=52):
    """Coordinatewise smallest y >= 0 with pred(y) true; pred(hi0) must hold."""
    lo = np.zeros(shape)
    hi = np.full(shape, hi0)
    done0 = pred(lo)
    hi[done0] = 0.0
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        ok = pred(mid)
        hi = np.where(ok, mid, hi)
        lo = np.where(ok, lo, mid)
    return hi


def _levy_tables(mu: Dist, xg: np.ndarray, ticks: np.ndarray):
    X = xg[:, None]
    T = ticks[None, :]
    l_first = _vector_threshold(lambda y: mu.cdf_left_vec(xg - y) - y <= 0.0, xg.shape)
    l_last = _vector_threshold(lambda y: 1.0 <= mu.cdf_vec(xg + y) + y, xg.shape)
    A = _vector_threshold(lambda y: mu.cdf_left_vec(X - y) - y <= T,
                          (len(xg), len(ticks)))
    B = _vector_threshold(lambda y: T <= mu.cdf_vec(X + y) + y,
                          (len(xg), len(ticks)))
    return l_first, l_last, A, B


def _kolmogorov_tables(mu: Dist, xg: np.ndarray, ticks: np.ndarray):
    Fl = mu.cdf_left_vec(xg)[:, None]
    Fr = mu.cdf_vec(xg)[:, None]
    T = ticks[None, :]
    t_lo = np.abs(Fl - T)  # |F_-(x) - P_{j-1}|
    t_hi = np.abs(Fr - T)  # |F(x) - P_j|
    return t_lo, t_hi


def _cost_table(mu: Dist, xg: np.ndarray, ticks: np.ndarray, r: float):
    """C[i, t] = integral over [0, ticks[t]] of |quantile(y) - xg[i]|^r dy.

    Panel edges include the quantile's own breakpoints and one-sided values
    are used there, so step quantiles are integrated exactly.
    """
    brk = [v for v in mu.quantile_breakpoints() if 0.0 < v < 1.0]
    fine = np.unique(np.concatenate([np.linspace(0.0, 1.0, 4001), ticks, brk]))
    a, b = fine[:-1], fine[1:]
    mids = 0.5 * (a + b)
    q_lo = mu.quantile_vec(a)                       # right-continuous at the left edge
    q_hi = np.array([mu.quantile_left(float(y)) for y in b])
    q_mids = mu.quantile_vec(mids)
    X = xg[:, None]
    fa = np.abs(q_lo[None, :] - X) ** r
    fb = np.abs(q_hi[None, :] - X) ** r
    fm = np.abs(q_mids[None, :] - X) ** r
    panel = (b - a)[None, :] / 6.0 * (fa + 4.0 * fm + fb)
    cum = np.concatenate([np.zeros((len(xg), 1)), np.cumsum(panel, axis=1)], axis=1)
    tick_idx = np.searchsorted(fine, ticks)
    return cum[:, tick_idx]


def _position_combos(npos: int, n: int) -> np.ndarray:
    idx = np.arange(npos)
    if n == 1:
        return idx[:, None]
    if n == 2:
        i, j = np.meshgrid(idx, idx, indexing="ij")
        keep = i <= j
        return np.stack([i[keep], j[keep]], axis=1)
    combos = []
    for i in range(npos):
        for j in range(i, npos):
            combos.append((i, j))
    combos = np.asarray(combos)
    out = []
    for k in range(npos):
        left = combos[combos[:, 1] <= k]
        out.append(np.concatenate([left, np.full((len(left), 1), k)], axis=1))
    return np.concatenate(out, axis=0)


def brute_force_best(mu: Dist, metric: MetricKind, n: int, grid: GridSpec,
                     mode: str = "unconstrained", extra_positions=()) -> ApproxResult:
    """Exhaustive minimum of the distance over a position/weight grid."""
    if n != grid.n:
        raise InvalidParameterError("n must match the grid spec")
    xg = _position_grid(mu, grid, extra_positions)
    ticks = np.linspace(0.0, 1.0, grid.weight_steps + 1)
    if mode == "uniform":
        interior = np.array([[j / n for j in range(1, n)]]) if n > 1 \
            else np.zeros((1, 0))
        ticks = np.unique(np.concatenate([ticks, interior.ravel()])) if n > 1 else ticks
    elif mode == "unconstrained":
        from .numerics import simplex_grid
        interior = simplex_grid(n, grid.weight_steps)
    else:
        raise InvalidInputError(f"unknown mode {mode!r}")
    tick_of = {round(float(t), 12): k for k, t in enumerate(ticks)}
    w_idx = np.array([[tick_of[round(float(v), 12)] for v in row] for row in interior])

    combos = _position_combos(len(xg), n)
    lam = mu.support.length

    if metric.kind == "levy":
        l_first, l_last, A, B = _levy_tables(mu, xg, ticks)
    elif metric.kind == "kolmogorov":
        t_lo, t_hi = _kolmogorov_tables(mu, xg, ticks)
    elif metric.kind == "kantorovich":
        C = _cost_table(mu, xg, ticks, metric.r)
    else:
        raise InvalidParameterError("grid oracle supports levy/kolmogorov/kantorovich")

    best_val = math.inf
    best_combo = None
    best_P = None
    zero_k = tick_of[0.0]
    one_k = tick_of[1.0]
    for row, kidx in zip(interior, w_idx):
        P_full = np.concatenate([[zero_k], kidx, [one_k]]).astype(int)
        if metric.kind == "levy":
            d = np.maximum(l_first[combos[:, 0]], l_last[combos[:, -1]])
            for j in range(1, n):
                cell = np.maximum(A[combos[:, j], P_full[j]],
                                  B[combos[:, j - 1], P_full[j]])
                d = np.maximum(d, cell)
            d = mu.omega * d
        elif metric.kind == "kolmogorov":
            d = np.zeros(len(combos))
            for j in range(n):
                cell = np.maximum(t_lo[combos[:, j], P_full[j]],
                                  t_hi[combos[:, j], P_full[j + 1]])
                d = np.maximum(d, cell)
        else:
            d = np.zeros(len(combos))
            for j in range(n):
                d += C[combos[:, j], P_full[j + 1]] - C[combos[:, j], P_full[j]]
            d = np.maximum(d, 0.0) ** (1.0 / metric.r)
            if not math.isinf(lam):
                d = d / lam
        k = int(np.argmin(d))
        if d[k] < best_val:
            best_val = float(d[k])
            best_combo = combos[k].copy()
            best_P = np.concatenate([[0.0], row, [1.0]])

    x = xg[best_combo]
    measure = FiniteMeasure(x, np.diff(best_P))
    steps = {"position_step": float((xg[-1] - xg[0]) / grid.position_steps),
             "weight_step": 1.0 / grid.weight_steps}
    return ApproxResult(measure, best_val, steps, Diagnostics())


def definitional_levy(mu: Dist, nu: FiniteMeasure, grid_points: int = 10_000,
                      tol: float = 1e-9) -> float:
    """Levy distance straight from the cdf-sandwich definition on a grid.

    Bisects the inflation level, checking the two sandwich inequalities on a
    dense grid joined with all breakpoints; agrees with the cell formula to
    within the grid resolution.
    """
    if grid_points < 1000:
        raise InvalidParameterError("use at least 1000 grid points")
    m = nu.merged()
    lo = min(mu.inf_support, m.x[0]) - 1.0
    hi = max(mu.sup_support if math.isfinite(mu.sup_support) else m.x[-1] + 2.0,
             m.x[-1]) + 1.0
    ts = np.unique(np.concatenate([np.linspace(lo, hi, grid_points), m.x]))
    P = m.P
    idx_right = np.searchsorted(m.x, ts, side="right")
    idx_left = np.searchsorted(m.x, ts, side="left")
    F_nu = P[idx_right]
    F_nu_left = P[idx_left]

    def pred(y):
        c1 = np.all(F_nu <= mu.cdf_vec(ts + y) + y + 1e-15)
        c2 = np.all(mu.cdf_left_vec(ts - y) - y <= F_nu_left + 1e-15)
        return bool(c1 and c2)

    from .numerics import bisect_predicate
    return mu.omega * bisect_predicate(pred, 0.0, 1.0, tol)


def certificate_violation(mu: Dist, metric: MetricKind, x: np.ndarray,
                          P: np.ndarray, level: float) -> dict[str, float]:
    """Largest optimality-condition residuals of (x, P) at a given optimum level.

    Returns per-condition-family maxima so callers can apply tolerances in the
    right units; used to confirm that a grid minimizer lies inside a solver's
    optimality boxes up to grid resolution.  Keys: "weight_slack" for the
    cumulative-weight conditions, "position_slack" for the atom-position ones.
    """
    x = np.asarray(x, dtype=float)
    if metric.kind == "levy":
        return {"weight_slack": max(levy.positions_condition_slacks(mu, x, P, level)),
                "position_slack": max(levy.weights_condition_slacks(mu, x, P, level))}
    if metric.kind == "kolmogorov":
        return {"weight_slack": max(kolmogorov.positions_condition_slacks_K(mu, x, P, level)),
                "position_slack": max(kolmogorov.weights_condition_slacks_K(mu, x, P, level))}
    if metric.kind == "kantorovich":
        r = metric.r
        w = max(kantorovich.weight_condition_slacks_dr(mu, x, P), default=0.0)
        pos = 0.0
        for j in range(len(x)):
            if P[j] < P[j + 1]:
                c = kantorovich.cell_argmin(mu, P[j], P[j + 1], r)
                pos = max(pos, abs(x[j] - c))
        return {"weight_slack": w, "position_slack": pos}
    raise InvalidParameterError("unsupported metric")
