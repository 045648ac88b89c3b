"""Result containers shared by the approximation solvers."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .distributions import FiniteMeasure


@dataclass(frozen=True)
class Diagnostics:
    iterations: int = 0
    residual: float = 0.0


@dataclass(frozen=True)
class LevyCertificate:
    """Optimality record for a Levy-metric solution.

    ``value`` is the unnormalized optimum level; ``slacks`` are the per-cell
    condition residuals (all <= 0 at an optimum, up to solver tolerance);
    ``boxes`` are the full per-index optimality intervals.
    """

    value: float
    mode: str  # positions-given | weights-given | unconstrained
    slacks: tuple[float, ...]
    boxes: tuple[tuple[float, float], ...] = ()


@dataclass(frozen=True)
class KolmogorovCertificate:
    value: float
    mode: str
    slacks: tuple[float, ...]
    boxes: tuple[tuple[float, float], ...] = ()
    distinct_positions: bool = True


@dataclass(frozen=True)
class KantorovichCertificate:
    """Residuals of the two interval conditions a transport optimum satisfies.

    ``quality`` is "global" when the solution is a proven unique optimum for
    the family at hand, "stationary" when only the necessary conditions were
    verified.
    """

    mode: str
    slacks: tuple[float, ...]
    quality: str = "global"
    boxes: tuple[tuple[float, float], ...] = ()

    @property
    def value(self) -> float:
        return max(self.slacks) if self.slacks else 0.0


@dataclass(frozen=True)
class LloydState:
    """Iteration record of the alternating position/weight solver."""

    x: np.ndarray
    P: np.ndarray
    residual: float
    iterations: int


@dataclass(frozen=True)
class ApproxResult:
    measure: FiniteMeasure
    distance: float
    certificate: object | None = None
    diagnostics: object = field(default_factory=Diagnostics)

    @property
    def x(self) -> np.ndarray:
        return self.measure.x

    @property
    def p(self) -> np.ndarray:
        return self.measure.p

    @property
    def P(self) -> np.ndarray:
        return self.measure.P
