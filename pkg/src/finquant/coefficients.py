"""Quantization coefficients: closed forms and empirical convergence estimates.

The coefficient of a law under a metric is the limit of n times the n-atom
approximation error; the uniform coefficient constrains all weights to 1/n.
Closed forms exist for the significand law (any base), the square law on
[0, 1], and the standard exponential; elsewhere only sequences are reported.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import kantorovich, kolmogorov, levy
from .distributions import (
    Benford,
    Beta21,
    Dist,
    Exponential,
    InverseCantor,
    InvalidParameterError,
)
from .metrics import MetricKind

LOG3_OVER_LOG2 = math.log(3.0) / math.log(2.0)


@dataclass(frozen=True)
class CoefficientTable:
    metric: MetricKind
    Q: float
    Q_u: float
    b: float | str
    alpha_exponent: float = 1.0


def benford_coefficient(metric: MetricKind, b: float, mode: str) -> float:
    """Closed-form (uniform) quantization coefficient of the base-b significand law."""
    if not b > 1.0:
        raise InvalidParameterError("base must exceed 1")
    logb = math.log(b)
    pre = (max(b, 2.0) - 1.0) / (2.0 * b - 2.0)
    if metric.kind == "levy":
        if mode == "best":
            return pre * (math.log(1.0 + b * logb) - math.log(1.0 + logb)) / logb
        if mode == "uniform":
            return pre * b * logb / (1.0 + b * logb)
    elif metric.kind == "kantorovich":
        r = metric.r
        if mode == "best":
            return (r + 1.0) / (2.0 * (b - 1.0) * logb ** (1.0 / r)) \
                * ((b ** (r / (r + 1.0)) - 1.0) / r) ** (1.0 + 1.0 / r)
        if mode == "uniform":
            return logb ** (1.0 - 1.0 / r) / (2.0 * (b - 1.0)) \
                * ((b ** r - 1.0) / (r * (r + 1.0))) ** (1.0 / r)
    elif metric.kind == "kolmogorov":
        if mode in ("best", "uniform"):
            return 0.5
    else:
        raise InvalidParameterError("no closed coefficient for this metric")
    raise InvalidParameterError(f"unknown mode {mode!r}")


def benford_table(b: float, rs=(1.0, 2.0)) -> list[CoefficientTable]:
    rows = [CoefficientTable(MetricKind.levy(),
                             benford_coefficient(MetricKind.levy(), b, "best"),
                             benford_coefficient(MetricKind.levy(), b, "uniform"), b)]
    for r in rs:
        mk = MetricKind.kantorovich(r)
        rows.append(CoefficientTable(mk, benford_coefficient(mk, b, "best"),
                                     benford_coefficient(mk, b, "uniform"), b))
    rows.append(CoefficientTable(MetricKind.kolmogorov(), 0.5, 0.5, b))
    return rows


def limiting_behavior(metric: MetricKind, mode: str) -> tuple[float, float]:
    """(limit of the coefficient as b -> 1, scaled limit as b -> inf).

    The large-b limits are taken after the scaling that keeps them finite:
    none for the Levy and Kolmogorov rows, (log b)^(1/r) for the best
    transport row, (log b)^(1/r - 1) for the uniform transport row.
    """
    if metric.kind == "levy":
        return 0.5, 0.5
    if metric.kind == "kolmogorov":
        return 0.5, 0.5
    if metric.kind == "kantorovich":
        r = metric.r
        small_b = 0.5 * (r + 1.0) ** (-1.0 / r)
        if mode == "best":
            return small_b, 0.5 * (r + 1.0) * r ** (-(r + 1.0) / r)
        if mode == "uniform":
            return small_b, 0.5 * r ** (-1.0 / r) * (r + 1.0) ** (-1.0 / r)
    raise InvalidParameterError("no limiting behavior for this metric/mode")


def known_coefficient(mu: Dist, metric: MetricKind, mode: str) -> dict | None:
    """Closed-form limit of the scaled error sequence, when one is known.

    Returns {"limit": value, "scaling": name} where scaling is "n" for plain
    n * d limits and "n_over_log_n" for the exponential uniform transport row;
    None when no limit is known (or none exists).
    """
    if metric.kind == "fortet-mourier":
        return None
    if isinstance(mu, Benford):
        return {"limit": benford_coefficient(metric, mu.b, mode), "scaling": "n"}
    if isinstance(mu, Beta21):
        if metric.kind == "levy":
            v = (2.0 - math.log(3.0)) / 4.0 if mode == "best" else 0.5
            return {"limit": v, "scaling": "n"}
        if metric.kind == "kolmogorov":
            return {"limit": 0.5, "scaling": "n"}
        r = metric.r
        if mode == "best":
            v = 2.0 ** (1.0 / r - 1.0) * (r + 1.0) / (r + 2.0) ** (1.0 + 1.0 / r)
            return {"limit": v, "scaling": "n"}
        if r < 2.0:
            v = (2.0 ** (1.0 - 2.0 * r) / ((r + 1.0) * (2.0 - r))) ** (1.0 / r)
            return {"limit": v, "scaling": "n"}
        return None
    if isinstance(mu, Exponential):
        if metric.kind == "levy":
            v = 0.5 * math.log(2.0) if mode == "best" else 0.5
            return {"limit": v, "scaling": "n"}
        if metric.kind == "kolmogorov":
            return {"limit": 0.5, "scaling": "n"}
        if metric.r == 1.0:
            if mode == "best":
                return {"limit": 1.0, "scaling": "n"}
            return {"limit": 0.25, "scaling": "n_over_log_n"}
        return None
    return None


def cantor_exponent(metric: MetricKind, mode: str) -> float:
    """Decay exponent alpha with n^alpha * d bounded for the inverse Cantor law."""
    if metric.kind in ("levy", "kolmogorov"):
        return LOG3_OVER_LOG2 if mode == "best" else 1.0
    r = metric.r
    alpha = 1.0 / r + (1.0 - 1.0 / r) / LOG3_OVER_LOG2
    return alpha * LOG3_OVER_LOG2 if mode == "best" else alpha


def solve_distance(mu: Dist, metric: MetricKind, mode: str, n: int,
                   tol: float = 1e-13) -> float:
    """Optimal distance for one (metric, mode, n) instance."""
    if metric.kind == "levy":
        if mode == "best":
            return levy.best_unconstrained(mu, n, tol).distance
        return levy.best_given_weights(mu, levy.uniform_weights(n), tol).distance
    if metric.kind == "kolmogorov":
        if mode == "best":
            return kolmogorov.best_unconstrained_K(mu, n, tol).distance
        return kolmogorov.best_given_weights_K(mu, levy.uniform_weights(n), tol).distance
    if metric.kind == "kantorovich":
        r = metric.r
        if mode == "uniform":
            return kantorovich.best_dr_general(mu, n, r, "uniform").distance
        if r == 1.0:
            if isinstance(mu, Benford):
                return kantorovich.benford_best_d1(mu.b, n).distance
            return kantorovich.best_dr_general(mu, n, 1.0, "unconstrained").distance
        if isinstance(mu, Benford):
            return kantorovich.benford_best_dr_shooting(mu.b, n, r).distance
        return kantorovich.best_dr_general(mu, n, r, "unconstrained").distance
    raise InvalidParameterError("no solver for this metric")


def estimate_coefficient(mu: Dist, metric: MetricKind, mode: str, n_list,
                         rate_exponent: float = 1.0,
                         tol: float = 1e-13) -> list[tuple[int, float]]:
    """(n, n^exponent * optimal distance) pairs; no extrapolation is applied."""
    return [(n, n ** rate_exponent * solve_distance(mu, metric, mode, n, tol))
            for n in n_list]


def default_exponent(mu: Dist, metric: MetricKind, mode: str) -> float:
    if isinstance(mu, InverseCantor):
        return cantor_exponent(metric, mode)
    return 1.0
