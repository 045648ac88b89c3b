"""Probability metrics between a distribution and finitely supported measures.

Implements the Levy, L^r-Kantorovich, Kolmogorov, and Fortet-Mourier
distances, together with the two auxiliary cell penalties that make the first
and third computable in closed cell form:

* ``ell(f, I, x)``: the smallest inflation ``y >= 0`` such that the graph of
  ``f`` shifted by ``(+/-y, +/-y)`` envelopes the level ``x`` over the cell
  ``I``.  Maximized over cells it yields the Levy distance to a discrete
  measure.
* ``kappa(f, I, x)``: the sup deviation between ``f`` near ``x`` and the value
  band ``I``; maximized over cells it yields the Kolmogorov distance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

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
    Mixture,
    finite_to_dist,
)
from .numerics import (
    DEFAULT_TOL,
    adaptive_simpson,
    bisect_predicate,
    composite_simpson,
)

INF = math.inf


@dataclass(frozen=True)
class MetricKind:
    """One of levy | kantorovich(r) | kolmogorov | fortet_mourier(r)."""

    kind: str
    r: float | None = None

    _KINDS = ("levy", "kantorovich", "kolmogorov", "fortet-mourier")

    def __post_init__(self):
        if self.kind not in self._KINDS:
            raise InvalidParameterError(f"unknown metric kind {self.kind!r}")
        if self.kind in ("kantorovich", "fortet-mourier"):
            if self.r is None or not self.r >= 1.0:
                raise InvalidParameterError("order r must satisfy r >= 1")

    @classmethod
    def levy(cls):
        return cls("levy")

    @classmethod
    def kantorovich(cls, r: float = 1.0):
        return cls("kantorovich", float(r))

    @classmethod
    def kolmogorov(cls):
        return cls("kolmogorov")

    @classmethod
    def fortet_mourier(cls, r: float = 1.0):
        return cls("fortet-mourier", float(r))

    @classmethod
    def parse(cls, text: str) -> "MetricKind":
        t = text.strip().lower()
        if t in ("levy", "l", "dl"):
            return cls.levy()
        if t in ("kolmogorov", "k", "dk", "ks"):
            return cls.kolmogorov()
        for prefix in ("kantorovich:", "fm:", "fortet-mourier:"):
            if t.startswith(prefix):
                r = float(t[len(prefix):])
                return cls.fortet_mourier(r) if prefix != "kantorovich:" else cls.kantorovich(r)
        if t.startswith("d") and len(t) > 1:
            try:
                return cls.kantorovich(float(t[1:]))
            except ValueError:
                pass
        raise InvalidParameterError(f"cannot parse metric {text!r}")

    @property
    def label(self) -> str:
        if self.kind == "kantorovich":
            r = self.r
            return f"d{int(r)}" if float(r).is_integer() else f"d{r}"
        if self.kind == "fortet-mourier":
            return f"fm:{self.r}"
        return {"levy": "levy", "kolmogorov": "dK"}[self.kind]


class MonotoneFn:
    """A nondecreasing function given by its one-sided limits on the extended line."""

    def __init__(self, left: Callable[[float], float], right: Callable[[float], float]):
        self.left = left
        self.right = right

    @classmethod
    def from_cdf(cls, dist: Dist) -> "MonotoneFn":
        def left(x):
            if x == -INF:
                return 0.0
            if x == INF:
                return 1.0
            return dist.cdf_left(x)

        def right(x):
            if x == -INF:
                return 0.0
            if x == INF:
                return 1.0
            return dist.cdf(x)

        return cls(left, right)

    @classmethod
    def from_quantile(cls, dist: Dist) -> "MonotoneFn":
        # The extended-real upper inverse: -inf below 0, +inf at or above 1.
        def right(t):
            if t < 0.0:
                return -INF
            if t >= 1.0:
                return INF
            return dist.quantile(t)

        def left(t):
            if t <= 0.0:
                return -INF
            if t > 1.0:
                return INF
            return dist.quantile_left(t)

        return cls(left, right)

    def scaled(self, factor: float) -> "MonotoneFn":
        return MonotoneFn(lambda x: factor * self.left(x),
                          lambda x: factor * self.right(x))


@dataclass(frozen=True)
class EllEvaluation:
    """Minimal cell penalty together with the closed interval of minimizers."""

    value: float
    minimizing_interval: tuple[float, float]


def _pred_bracket(pred, tol):
    hi = 1.0
    for _ in range(64):
        if pred(hi):
            return bisect_predicate(pred, 0.0, hi, tol)
        hi *= 2.0
    raise InvalidInputError("envelope condition never satisfied; f unbounded on the cell")


def ell(f: MonotoneFn, cell: tuple[float, float], x: float,
        tol: float = DEFAULT_TOL) -> float:
    """Smallest y >= 0 with f_-(sup I - y) - y <= x <= f_+(inf I + y) + y."""
    lo, hi = cell
    if lo > hi:
        raise InvalidParameterError("cell endpoints out of order")

    def pred(y):
        return (f.left(hi - y) - y <= x) and (x <= f.right(lo + y) + y)

    return _pred_bracket(pred, tol)


def ell_star(f: MonotoneFn, cell: tuple[float, float],
             tol: float = DEFAULT_TOL) -> EllEvaluation:
    """Minimal value of ell(f, cell, .) and the interval where it is attained."""
    lo, hi = cell
    if lo > hi:
        raise InvalidParameterError("cell endpoints out of order")

    def pred(y):
        return f.left(hi - y) - y <= f.right(lo + y) + y

    v = _pred_bracket(pred, tol)
    a = f.left(hi - v) - v
    b = f.right(lo + v) + v
    if a > b:  # numerically crossed; the minimizer set is a point
        a = b = 0.5 * (a + b)
    return EllEvaluation(v, (a, b))


def kappa(f: MonotoneFn, cell: tuple[float, float], x: float) -> float:
    """max{|f_-(x) - inf I|, |f_+(x) - sup I|} for a bounded value band I."""
    lo, hi = cell
    if not (math.isfinite(lo) and math.isfinite(hi)) or lo > hi:
        raise InvalidParameterError("kappa needs a bounded, nonempty cell")
    return max(abs(f.left(x) - lo), abs(f.right(x) - hi))


def levy_distance(mu: Dist, nu: FiniteMeasure, form: str = "cdf",
                  tol: float = DEFAULT_TOL) -> float:
    """Levy distance between mu and a finitely supported measure.

    ``form="cdf"`` maximizes the cell penalty of the cdf over position cells;
    ``form="quantile"`` uses the inverse form over weight cells.  Both agree
    (the distance is inversion invariant) and the pair is kept as a built-in
    cross-check.
    """
    m = nu.merged()
    if form == "cdf":
        f = MonotoneFn.from_cdf(mu)
        xs = np.concatenate([[-INF], m.x, [INF]])
        P = m.P
        worst = 0.0
        for j in range(m.n + 1):
            worst = max(worst, ell(f, (xs[j], xs[j + 1]), P[j], tol))
    elif form == "quantile":
        f = MonotoneFn.from_quantile(mu)
        P = m.P
        worst = 0.0
        for j in range(1, m.n + 1):
            worst = max(worst, ell(f, (P[j - 1], P[j]), m.x[j - 1], tol))
    else:
        raise InvalidParameterError(f"unknown form {form!r}")
    return mu.omega * worst


def kolmogorov_distance(mu: Dist, nu: FiniteMeasure) -> float:
    """Kolmogorov (sup) distance between mu and a finitely supported measure.

    Duplicate positions are merged first; with distinct positions the sup over
    each cell is attained at one-sided limits of the cdf, so the value is exact.
    """
    m = nu.merged()
    P = m.P
    f = MonotoneFn.from_cdf(mu)
    return max(kappa(f, (P[j], P[j + 1]), m.x[j]) for j in range(m.n))


def _is_step(d: Dist) -> bool:
    return isinstance(d, Mixture) and not math.isinf(d.n_support())


def _step_quantile_table(d: Mixture):
    atoms = d.atom_list()
    xs = np.array([a[0] for a in atoms])
    P = np.concatenate([[0.0], np.cumsum([a[1] for a in atoms])])
    P[-1] = 1.0
    return xs, P


def _beta_left(t: float, c: float, r: float) -> float:
    """Antiderivative of (c - t)^r t in t, valid where t <= c."""
    u = max(c - t, 0.0)
    return u ** (r + 2.0) / (r + 2.0) - c * u ** (r + 1.0) / (r + 1.0)


def _beta_right(t: float, c: float, r: float) -> float:
    """Antiderivative of (t - c)^r t in t, valid where t >= c."""
    u = max(t - c, 0.0)
    return u ** (r + 2.0) / (r + 2.0) + c * u ** (r + 1.0) / (r + 1.0)


def _abs_moment(mu: Dist, c: float, y0: float, y1: float, r: float,
                rel_tol: float = 1e-11) -> float:
    """integral over [y0, y1] of |quantile_mu(y) - c|^r dy."""
    if y1 <= y0:
        return 0.0
    if isinstance(mu, Benford):
        lnb = math.log(mu.b)
        if r == 2.0:
            def F(y):
                return mu.b ** (2 * y) / (2 * lnb) - 2 * c * mu.b ** y / lnb + c * c * y
            return F(y1) - F(y0)
        if r == 1.0:
            ys = min(max(mu.cdf(c), y0), y1)
            left = c * (ys - y0) - (mu.b ** ys - mu.b ** y0) / lnb
            right = (mu.b ** y1 - mu.b ** ys) / lnb - c * (y1 - ys)
            return max(left, 0.0) + max(right, 0.0)
    if isinstance(mu, Beta21):
        # substitute t = sqrt(y): the integrand becomes 2 t |t - c|^r
        ys = min(max(mu.cdf(c), y0), y1)
        total = 0.0
        if ys > y0:
            total += 2.0 * (_beta_left(math.sqrt(ys), c, r)
                            - _beta_left(math.sqrt(y0), c, r))
        if y1 > ys:
            total += 2.0 * (_beta_right(math.sqrt(y1), c, r)
                            - _beta_right(math.sqrt(ys), c, r))
        return max(total, 0.0)
    if isinstance(mu, Exponential):
        # Work on the exponential scale: u = -log(1-y), du-weight e^{-u}.
        u0 = -math.log1p(-y0)
        u1 = INF if y1 >= 1.0 else -math.log1p(-y1)
        total = 0.0
        if u0 < c:  # integral of (c-u)^r e^{-u} on [u0, min(u1, c)]
            ub = min(u1, c)
            if r == 1.0:
                total += (ub + 1 - c) * math.exp(-ub) - (u0 + 1 - c) * math.exp(-u0)
            else:
                total += adaptive_simpson(
                    lambda u: (c - u) ** r * math.exp(-u), u0, ub, rel_tol)
        if u1 > c:  # integral of (u-c)^r e^{-u} on [max(u0, c), u1]
            ua = max(u0, c)
            ga = math.exp(gammaln(r + 1.0) - c)
            lolim = gammainc(r + 1.0, ua - c)
            hilim = 1.0 if u1 == INF else gammainc(r + 1.0, u1 - c)
            total += ga * (hilim - lolim)
        return total
    # Generic path: split at the crossing level so each side is smooth.
    ys = min(max(mu.cdf(c), y0), y1)
    if mu.fixed_quadrature_panels:
        quad = lambda f, a, b: composite_simpson(f, a, b, mu.fixed_quadrature_panels)
    else:
        quad = lambda f, a, b: adaptive_simpson(f, a, b, rel_tol)
    out = 0.0
    if ys > y0:
        out += quad(lambda y: max(c - mu.quantile(y), 0.0) ** r, y0, ys)
    if y1 > ys:
        out += quad(lambda y: max(mu.quantile(y) - c, 0.0) ** r, ys, y1)
    return out


def quantile_lr_norm(mu: Dist, nu: Dist, r: float, rel_tol: float = 1e-11) -> float:
    """Unnormalized L^r norm of the quantile difference on (0, 1)."""
    if not r >= 1.0:
        raise InvalidParameterError("order r must satisfy r >= 1")
    if _is_step(mu) and not _is_step(nu):
        mu, nu = nu, mu
    if _is_step(mu) and _is_step(nu):
        xs_m, P_m = _step_quantile_table(mu)
        xs_n, P_n = _step_quantile_table(nu)
        edges = np.unique(np.concatenate([P_m, P_n]))
        mids = 0.5 * (edges[:-1] + edges[1:])
        qm = xs_m[np.searchsorted(P_m[1:-1], mids, side="right")]
        qn = xs_n[np.searchsorted(P_n[1:-1], mids, side="right")]
        total = float(np.sum(np.abs(qm - qn) ** r * np.diff(edges)))
        return total ** (1.0 / r)
    breaks = set(mu.quantile_breakpoints()) | set(nu.quantile_breakpoints())
    edges = sorted({0.0, 1.0} | {b for b in breaks if 0.0 < b < 1.0})
    total = 0.0
    if _is_step(nu):
        xs_n, P_n = _step_quantile_table(nu)
        edges = sorted(set(edges) | {float(p) for p in P_n if 0.0 < p < 1.0})
        for a, b in zip(edges[:-1], edges[1:]):
            c = float(nu.quantile(0.5 * (a + b)))
            total += _abs_moment(mu, c, a, b, r, rel_tol)
    else:
        for a, b in zip(edges[:-1], edges[1:]):
            total += adaptive_simpson(
                lambda y: abs(mu.quantile(y) - nu.quantile(y)) ** r, a, b, rel_tol)
    return total ** (1.0 / r)


def kantorovich_distance(mu: Dist, nu: Dist, r: float = 1.0,
                         rel_tol: float = 1e-11) -> float:
    """L^r-Kantorovich (transport) distance.

    On a bounded common support the value is normalized by the support length
    so that the diameter of the space is 1; on unbounded supports the raw
    L^r norm of the quantile difference is returned.
    """
    norm = quantile_lr_norm(mu, nu, r, rel_tol)
    lam = mu.support.length
    return norm if math.isinf(lam) else norm / lam


class PowerPushforward(Dist):
    """Image of an atomless distribution under x -> x^r on [1, inf)."""

    def __init__(self, base: Dist, r: float):
        if not base.atomless:
            raise InvalidInputError("use an explicit atom transform for discrete laws")
        self.base = base
        self.r = float(r)
        self.support = Interval(base.support.lo ** r, base.support.hi ** r)
        self.strictly_increasing = base.strictly_increasing

    def cdf(self, x: float) -> float:
        if x <= 0.0:
            return 0.0
        return self.base.cdf(x ** (1.0 / self.r))

    cdf_left = cdf

    def quantile(self, y: float) -> float:
        return self.base.quantile(y) ** self.r

    def quantile_left(self, y: float) -> float:
        return self.base.quantile_left(y) ** self.r

    def quantile_breakpoints(self):
        return self.base.quantile_breakpoints()


def power_pushforward(dist: Dist, r: float) -> Dist:
    """Pushforward of a distribution under the power map x -> x^r."""
    if r == 1.0:
        return dist
    if _is_step(dist):
        atoms = dist.atom_list()
        sup = dist.support
        return Mixture([("a", x ** r, m) for x, m in atoms],
                       support=Interval(sup.lo ** r, sup.hi ** r))
    return PowerPushforward(dist, r)


def fortet_mourier(mu: Dist, nu: Dist, r: float = 1.0) -> float:
    """Fortet-Mourier r-distance for laws supported in [1, inf).

    Computed as the L^1 area between the cdfs of the pushforwards under
    x -> x^r, divided by r.
    """
    if not r >= 1.0:
        raise InvalidParameterError("order r must satisfy r >= 1")
    for d in (mu, nu):
        if d.support.lo < 1.0:
            raise InvalidInputError("Fortet-Mourier distance needs support in [1, inf)")
    mu_t = power_pushforward(mu, r)
    nu_t = power_pushforward(nu, r)
    return quantile_lr_norm(mu_t, nu_t, 1.0) / r


def evaluate_distance(mu: Dist, nu: FiniteMeasure, metric: MetricKind) -> float:
    """Distance from mu to a finitely supported measure under any MetricKind."""
    if metric.kind == "levy":
        return levy_distance(mu, nu)
    if metric.kind == "kolmogorov":
        return kolmogorov_distance(mu, nu)
    nu_dist = finite_to_dist(nu, mu.support if not math.isinf(mu.support.hi)
                             else Interval(mu.support.lo, max(nu.x[-1] + 1.0, mu.support.lo + 1.0)))
    if metric.kind == "kantorovich":
        if math.isinf(mu.support.hi):
            return quantile_lr_norm(mu, nu_dist, metric.r)
        return kantorovich_distance(mu, nu_dist, metric.r)
    return fortet_mourier(mu, nu_dist, metric.r)
