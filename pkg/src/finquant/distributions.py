"""One-dimensional distributions with exact CDF/quantile algebra.

Every distribution exposes a right-continuous ``cdf``, its left limits, the
upper (right-continuous) generalized inverse ``quantile`` and its left limits,
plus the atom structure.  Left limits are always computed from atom masses,
never by numerical limiting, so values at jump points are exact.

The upper quantile convention: ``quantile(y) = sup{x : cdf(x) <= y}`` for
``y`` in ``[0, 1)``, patched to ``min(support)`` when the atom at the left
endpoint already exceeds ``y``.  Arguments outside ``[0, 1)`` are clamped to
the support (callers that need the unclamped extended-real inverse go through
:mod:`finquant.metrics` handles instead).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np


class InvalidParameterError(ValueError):
    """A constructor or solver parameter violates its contract."""


class InvalidInputError(ValueError):
    """Input data violates its contract (empty, out of support, unbounded...)."""


@dataclass(frozen=True)
class Interval:
    """Closed interval [lo, hi]; hi = inf marks an unbounded right end."""

    lo: float
    hi: float

    def __post_init__(self):
        if not self.lo < self.hi:
            raise InvalidParameterError(f"need lo < hi, got [{self.lo}, {self.hi}]")

    @property
    def length(self) -> float:
        return self.hi - self.lo

    @property
    def omega(self) -> float:
        """Levy normalization max{1, length}/length; 1 for unbounded intervals."""
        if math.isinf(self.length):
            return 1.0
        return max(1.0, self.length) / self.length

    def contains(self, x: float, tol: float = 0.0) -> bool:
        return self.lo - tol <= x <= self.hi + tol


class Dist:
    """Base distribution interface; instances are immutable after construction."""

    support: Interval

    # Structure flags used by the metric engines to pick exact code paths.
    atomless: bool = True           # no point masses
    strictly_increasing: bool = True  # cdf strictly increasing on the support
    # Adaptive quadrature misbehaves on self-similar quantiles; laws with such
    # quantiles set a fixed composite-rule resolution instead (accuracy then
    # limited to roughly panels^-1, which is fine for exploratory use).
    fixed_quadrature_panels: int | None = None

    def cdf(self, x: float) -> float:
        raise NotImplementedError

    def atom(self, x: float) -> float:
        """Mass of the atom at x (0 for continuous distributions)."""
        return 0.0

    def cdf_left(self, x: float) -> float:
        return self.cdf(x) - self.atom(x)

    def quantile(self, y: float) -> float:
        raise NotImplementedError

    def quantile_left(self, y: float) -> float:
        """Left limit of the quantile function (the lower quantile)."""
        raise NotImplementedError

    @property
    def omega(self) -> float:
        return self.support.omega

    @property
    def sup_support(self) -> float:
        """Rightmost point of the topological support."""
        return self.support.hi

    @property
    def inf_support(self) -> float:
        return self.support.lo

    def atom_list(self) -> list[tuple[float, float]]:
        """Atoms as (position, mass), positions increasing (may be truncated)."""
        return []

    def n_support(self) -> float:
        """Number of support points (inf for non-finitely-supported laws)."""
        return math.inf

    def quantile_breakpoints(self) -> tuple[float, ...]:
        """y-values in (0,1) where the quantile is non-smooth (jumps/kinks)."""
        return ()

    # Vectorized variants; subclasses override when a numpy formula exists.
    def cdf_vec(self, xs: np.ndarray) -> np.ndarray:
        return np.array([self.cdf(float(x)) for x in np.ravel(xs)]).reshape(np.shape(xs))

    def cdf_left_vec(self, xs: np.ndarray) -> np.ndarray:
        return np.array([self.cdf_left(float(x)) for x in np.ravel(xs)]).reshape(np.shape(xs))

    def quantile_vec(self, ys: np.ndarray) -> np.ndarray:
        return np.array([self.quantile(float(y)) for y in np.ravel(ys)]).reshape(np.shape(ys))

    def _clamp_q(self, y: float) -> float | None:
        """Shared clamping for quantile arguments; None means 'in-range'."""
        if y < 0.0:
            return self.inf_support
        if y >= 1.0:
            return self.sup_support
        return None


class Benford(Dist):
    """Significand law on [1, b]: cdf(s) = log s / log b."""

    def __init__(self, b: float):
        if not b > 1.0:
            raise InvalidParameterError(f"base must exceed 1, got {b}")
        self.b = float(b)
        self.support = Interval(1.0, self.b)
        self._logb = math.log(self.b)

    def cdf(self, x: float) -> float:
        if x < 1.0:
            return 0.0
        if x >= self.b:
            return 1.0
        return math.log(x) / self._logb

    cdf_left = cdf  # continuous

    def quantile(self, y: float) -> float:
        c = self._clamp_q(y)
        if c is not None:
            return c
        return self.b ** y

    quantile_left = quantile  # continuous and strictly increasing

    def cdf_vec(self, xs):
        xs = np.asarray(xs, dtype=float)
        return np.clip(np.log(np.maximum(xs, 1e-300)) / self._logb, 0.0, 1.0)

    cdf_left_vec = cdf_vec

    def quantile_vec(self, ys):
        ys = np.asarray(ys, dtype=float)
        return self.b ** np.clip(ys, 0.0, 1.0)

    def __repr__(self):
        return f"Benford(b={self.b})"


class Beta21(Dist):
    """Distribution on [0, 1] with cdf(x) = x^2."""

    def __init__(self):
        self.support = Interval(0.0, 1.0)

    def cdf(self, x: float) -> float:
        if x <= 0.0:
            return 0.0
        if x >= 1.0:
            return 1.0
        return x * x

    cdf_left = cdf

    def quantile(self, y: float) -> float:
        c = self._clamp_q(y)
        if c is not None:
            return c
        return math.sqrt(y)

    quantile_left = quantile

    def cdf_vec(self, xs):
        return np.clip(np.asarray(xs, dtype=float), 0.0, 1.0) ** 2

    cdf_left_vec = cdf_vec

    def quantile_vec(self, ys):
        return np.sqrt(np.clip(np.asarray(ys, dtype=float), 0.0, 1.0))

    def __repr__(self):
        return "Beta21()"


class Exponential(Dist):
    """Standard exponential on [0, inf); the Levy normalization is 1 here."""

    def __init__(self):
        self.support = Interval(0.0, math.inf)

    def cdf(self, x: float) -> float:
        if x <= 0.0:
            return 0.0
        if math.isinf(x):
            return 1.0
        return -math.expm1(-x)

    cdf_left = cdf

    def quantile(self, y: float) -> float:
        c = self._clamp_q(y)
        if c is not None:
            return c
        return -math.log1p(-y)

    quantile_left = quantile

    def cdf_vec(self, xs):
        return -np.expm1(-np.maximum(np.asarray(xs, dtype=float), 0.0))

    cdf_left_vec = cdf_vec

    def quantile_vec(self, ys):
        return -np.log1p(-np.clip(np.asarray(ys, dtype=float), 0.0, 1.0 - 1e-16))

    def __repr__(self):
        return "Exponential()"


def _binary_to_base3_value(x: float) -> float:
    """Map dyadic x in (0,1) to sum(2 * b_k * 3^-k) over its binary digits b_k.

    This is the exact cdf of the law whose quantile is the Cantor function:
    the jump collected at x equals 3^-m when x = i/2^m in lowest terms.
    """
    num, den = x.as_integer_ratio()
    r = 0.0
    p = 1.0
    while num:
        den >>= 1
        p /= 3.0
        if num >= den:
            r += 2.0 * p
            num -= den
    return r


def _cantor_function(y: float, digits: int = 64) -> float:
    """Cantor function on [0,1], via exact ternary digit extraction."""
    if y <= 0.0:
        return 0.0
    if y >= 1.0:
        return 1.0
    num, den = y.as_integer_ratio()
    r = 0.0
    p = 1.0
    for _ in range(digits):
        if num == 0:
            break
        num *= 3
        digit, num = divmod(num, den)
        p /= 2.0
        if digit == 1:
            r += p
            break
        if digit == 2:
            r += p
    return r


class InverseCantor(Dist):
    """Discrete law on [0,1] with mass 3^-m at every dyadic i/2^m (i odd).

    Its quantile function is the classical Cantor function.  The depth
    parameter truncates only the enumerated atom list; cdf/quantile values are
    evaluated exactly from binary/ternary digit expansions, so they do not
    depend on depth.
    """

    atomless = False
    strictly_increasing = True  # dyadic atoms are dense in [0, 1]
    fixed_quadrature_panels = 4096

    def __init__(self, depth: int = 20):
        if depth < 1:
            raise InvalidParameterError("depth must be a positive integer")
        self.depth = int(depth)
        self.support = Interval(0.0, 1.0)

    def cdf(self, x: float) -> float:
        if x < 0.0:
            return 0.0
        if x >= 1.0:
            return 1.0
        if x == 0.0:
            return 0.0
        return _binary_to_base3_value(x)

    def atom(self, x: float) -> float:
        if not 0.0 < x < 1.0:
            return 0.0
        _, den = float(x).as_integer_ratio()
        m = den.bit_length() - 1  # x = odd/2^m in lowest terms
        return 3.0 ** (-m)

    def quantile(self, y: float) -> float:
        c = self._clamp_q(y)
        if c is not None:
            return c
        return _cantor_function(y)

    quantile_left = quantile  # the Cantor function is continuous

    def atom_list(self) -> list[tuple[float, float]]:
        out = []
        for m in range(1, self.depth + 1):
            mass = 3.0 ** (-m)
            out.extend((i / (1 << m), mass) for i in range(1, 1 << m, 2))
        out.sort()
        return out

    def __repr__(self):
        return f"InverseCantor(depth={self.depth})"


class Mixture(Dist):
    """Finite mixture of uniform slabs and atoms (piecewise-linear cdf with jumps).

    parts: iterable of ("u", lo, hi, mass) and ("a", pos, mass); masses sum to 1.
    """

    def __init__(self, parts, support: Interval | None = None):
        parts = [tuple(p) for p in parts]
        total = sum(p[-1] for p in parts)
        if abs(total - 1.0) > 1e-9:
            raise InvalidParameterError(f"part masses sum to {total}, expected 1")
        nodes: set[float] = set()
        for p in parts:
            if p[0] == "u":
                _, lo, hi, mass = p
                if not hi > lo:
                    raise InvalidParameterError("uniform slab needs lo < hi")
                nodes.update((lo, hi))
            elif p[0] == "a":
                nodes.add(p[1])
            else:
                raise InvalidParameterError(f"unknown part kind {p[0]!r}")
        xs = np.array(sorted(nodes))
        jump = np.zeros(len(xs))
        dens = np.zeros(len(xs))  # density on [xs[k], xs[k+1]); last entry 0
        for p in parts:
            if p[0] == "a":
                jump[np.searchsorted(xs, p[1])] += p[2]
            else:
                _, lo, hi, mass = p
                i, j = np.searchsorted(xs, [lo, hi])
                dens[i:j] += mass / (hi - lo)
        self.xs = xs
        self.jump = jump
        seg = dens[:-1] * np.diff(xs)
        # cum_right[k] = cdf(xs[k]); linear with slope dens[k] up to the next node
        self.cum_right = np.cumsum(jump) + np.concatenate([[0.0], np.cumsum(seg)])
        self.cum_right[-1] = 1.0
        self.dens = dens
        self.atomless = not np.any(jump > 0.0)
        self.strictly_increasing = bool(np.all(dens[:-1] > 0.0)) and len(xs) >= 2
        lo, hi = float(xs[0]), float(xs[-1])
        self.support = support if support is not None else Interval(lo, hi)
        if not (self.support.lo <= lo and hi <= self.support.hi):
            raise InvalidInputError("parts extend outside the stated support")
        self._sup_supp = hi
        self._inf_supp = lo
        self._atom_index = {float(x): float(j) for x, j in zip(xs, jump) if j > 0.0}

    @property
    def sup_support(self) -> float:
        return self._sup_supp

    @property
    def inf_support(self) -> float:
        return self._inf_supp

    def cdf(self, x: float) -> float:
        if x < self.xs[0]:
            return 0.0
        if x >= self.xs[-1]:
            return 1.0
        k = int(np.searchsorted(self.xs, x, side="right")) - 1
        return float(self.cum_right[k] + self.dens[k] * (x - self.xs[k]))

    def atom(self, x: float) -> float:
        return self._atom_index.get(float(x), 0.0)

    def cdf_vec(self, xs):
        xs = np.asarray(xs, dtype=float)
        k = np.clip(np.searchsorted(self.xs, xs, side="right") - 1, 0, len(self.xs) - 2)
        v = self.cum_right[k] + self.dens[k] * (xs - self.xs[k])
        v = np.where(xs < self.xs[0], 0.0, v)
        return np.where(xs >= self.xs[-1], 1.0, v)

    def cdf_left_vec(self, xs):
        xs = np.asarray(xs, dtype=float)
        out = self.cdf_vec(xs)
        for pos, mass in self._atom_index.items():
            out = np.where(xs == pos, out - mass, out)
        return out

    def _walk_sup(self, y: float, strict: bool) -> float:
        """sup{x : cdf(x) < y} (strict) or sup{x : cdf(x) <= y}."""
        side = "left" if strict else "right"
        k = int(np.searchsorted(self.cum_right, y, side=side)) - 1
        if k < 0:
            return float(self.xs[0])
        if k >= len(self.xs) - 1:
            return float(self.xs[-1])
        d = self.dens[k]
        if d <= 0.0:
            return float(self.xs[k + 1])
        x = self.xs[k] + (y - self.cum_right[k]) / d
        return float(min(x, self.xs[k + 1]))

    def quantile(self, y: float) -> float:
        c = self._clamp_q(y)
        if c is not None:
            return c
        return self._walk_sup(y, strict=False)

    def quantile_left(self, y: float) -> float:
        if y <= 0.0:
            return self._inf_supp
        if y >= 1.0:
            y = 1.0
        return self._walk_sup(y, strict=True)

    def quantile_vec(self, ys):
        return np.array([self.quantile(float(y)) for y in np.ravel(ys)]).reshape(np.shape(ys))

    def atom_list(self) -> list[tuple[float, float]]:
        return sorted(self._atom_index.items())

    def n_support(self) -> float:
        if self.atomless or np.any(self.dens[:-1] > 0.0):
            return math.inf
        return float(len(self._atom_index))

    def quantile_breakpoints(self) -> tuple[float, ...]:
        ys = set()
        for k in range(len(self.xs)):
            lo = self.cum_right[k] - self.jump[k]
            hi = self.cum_right[k]
            for v in (lo, hi):
                if 0.0 < v < 1.0:
                    ys.add(float(v))
        return tuple(sorted(ys))

    def __repr__(self):
        return f"Mixture({len(self.xs)} nodes, atomless={self.atomless})"


@dataclass(frozen=True)
class FiniteMeasure:
    """Finitely supported probability measure: sorted positions x, weights p."""

    x: np.ndarray
    p: np.ndarray

    def __init__(self, x, p):
        x = np.atleast_1d(np.asarray(x, dtype=float))
        p = np.atleast_1d(np.asarray(p, dtype=float))
        if x.shape != p.shape or x.ndim != 1 or len(x) == 0:
            raise InvalidInputError("positions and weights must be equal-length 1-D")
        if np.any(np.diff(x) < 0.0):
            raise InvalidInputError("positions must be nondecreasing")
        if np.any(p < -1e-12):
            raise InvalidInputError("weights must be nonnegative")
        if abs(p.sum() - 1.0) > 1e-12:
            raise InvalidInputError(f"weights sum to {p.sum()}, expected 1")
        p = np.maximum(p, 0.0)
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "p", p)

    @property
    def n(self) -> int:
        return len(self.x)

    @cached_property
    def P(self) -> np.ndarray:
        """Cumulative weights (P_0, ..., P_n) with P_0 = 0 and P_n = 1."""
        P = np.concatenate([[0.0], np.cumsum(self.p)])
        P[-1] = 1.0
        return P

    def merged(self) -> "FiniteMeasure":
        """Combine duplicate positions (exact float equality)."""
        xs, idx = np.unique(self.x, return_inverse=True)
        ps = np.zeros(len(xs))
        np.add.at(ps, idx, self.p)
        return FiniteMeasure(xs, ps)

    def without_zero_weights(self) -> "FiniteMeasure":
        keep = self.p > 0.0
        if keep.all():
            return self
        if not keep.any():
            raise InvalidInputError("all weights are zero")
        return FiniteMeasure(self.x[keep], self.p[keep] / self.p[keep].sum())

    def __repr__(self):
        return f"FiniteMeasure(n={self.n})"


def make_benford(b: float) -> Benford:
    return Benford(b)


def make_beta21() -> Beta21:
    return Beta21()


def make_inverse_cantor(depth: int = 20) -> InverseCantor:
    return InverseCantor(depth)


def make_exponential() -> Exponential:
    return Exponential()


def make_uniform(lo: float, hi: float) -> Mixture:
    return Mixture([("u", lo, hi, 1.0)])


def from_samples(data, support: Interval) -> FiniteMeasure:
    """Empirical measure of a data set: atoms at the distinct values."""
    arr = np.asarray(list(data), dtype=float)
    if arr.size == 0:
        raise InvalidInputError("empty data")
    if np.any(arr < support.lo) or np.any(arr > support.hi):
        raise InvalidInputError("data point outside the stated support")
    values, counts = np.unique(arr, return_counts=True)
    return FiniteMeasure(values, counts / arr.size)


def finite_to_dist(m: FiniteMeasure, support: Interval) -> Mixture:
    """View a finite measure as a distribution with a step cdf."""
    mm = m.merged()
    if not (support.lo <= mm.x[0] and mm.x[-1] <= support.hi):
        raise InvalidInputError("atoms outside the stated support")
    return Mixture([("a", float(x), float(p)) for x, p in zip(mm.x, mm.p)],
                   support=support)


def significand(data, b: float) -> list[float]:
    """Base-b significands: the unique s in [1, b) with |x| = s * b^k; 0 -> 0."""
    if not b > 1.0:
        raise InvalidParameterError(f"base must exceed 1, got {b}")
    out = []
    logb = math.log(b)
    for x in data:
        x = float(x)
        if x == 0.0:
            out.append(0.0)
            continue
        a = abs(x)
        k = math.floor(math.log(a) / logb)
        s = a / b ** k
        while s < 1.0:
            s *= b
        while s >= b:
            s /= b
        out.append(s)
    return out
