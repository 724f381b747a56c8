"""
Function-value oracle abstraction and query accounting.

A ProblemSpec couples an objective with the analytic metadata the schedules
and bounds need (L, μ, f*, the initial level-set radius). Only `evaluate`
charges the QueryLedger; gradients are instrumentation.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, Dict, Optional

import numpy as np

from ...errors import InvalidDimensionError, InvalidInputError, OracleOverflowError

logger = logging.getLogger(__name__)


class Regime(str, Enum):
    STRONGLY_CONVEX = "strongly_convex"
    CONVEX = "convex"
    NONCONVEX = "nonconvex"

    @classmethod
    def parse(cls, value) -> "Regime":
        aliases = {"sc": cls.STRONGLY_CONVEX, "cvx": cls.CONVEX, "nc": cls.NONCONVEX}
        if isinstance(value, Regime):
            return value
        key = str(value).strip().lower()
        if key in aliases:
            return aliases[key]
        try:
            return cls(key)
        except ValueError:
            raise InvalidInputError(f"Unknown regime {value!r}; expected one of sc, cvx, nc") from None

    def admits(self, problem_regime: "Regime") -> bool:
        """Whether a problem tagged `problem_regime` satisfies this regime's assumptions."""
        if self is Regime.STRONGLY_CONVEX:
            return problem_regime is Regime.STRONGLY_CONVEX
        if self is Regime.CONVEX:
            return problem_regime in (Regime.STRONGLY_CONVEX, Regime.CONVEX)
        return True


@dataclass(frozen=True)
class ProblemSpec:
    """An objective oracle plus its declared analytic constants."""

    name: str
    d: int
    smoothness_L: float
    strong_convexity_mu: float
    regime: Regime
    objective: Callable[[np.ndarray], float] = field(repr=False)
    gradient: Callable[[np.ndarray], np.ndarray] = field(repr=False)
    x0: np.ndarray = field(repr=False)
    f_star: Optional[float] = None
    x_star: Optional[np.ndarray] = field(default=None, repr=False)
    # maps the sublevel height f(x0) + B - f* to the distance radius
    radius_fn: Optional[Callable[[float], float]] = field(default=None, repr=False)
    distance_fn: Optional[Callable[[np.ndarray], float]] = field(default=None, repr=False)
    params: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.d < 1:
            raise InvalidDimensionError(f"Problem dimension must be positive, got {self.d}")
        if not self.smoothness_L > 0:
            raise InvalidInputError(f"Smoothness constant must be positive, got {self.smoothness_L}")
        if self.strong_convexity_mu < 0:
            raise InvalidInputError(f"Strong convexity constant must be non-negative, got {self.strong_convexity_mu}")
        if self.regime is Regime.STRONGLY_CONVEX and not (0 < self.strong_convexity_mu <= self.smoothness_L):
            raise InvalidInputError(
                f"Strongly convex problems need 0 < mu <= L (mu={self.strong_convexity_mu}, L={self.smoothness_L})"
            )
        if np.asarray(self.x0).shape != (self.d,):
            raise InvalidDimensionError(f"x0 has shape {np.asarray(self.x0).shape}, expected ({self.d},)")

    @property
    def initial_value(self) -> float:
        return float(self.objective(np.asarray(self.x0, dtype=float)))

    @property
    def initial_gap(self) -> float:
        """Δ₀ = f(x₀) − f*."""
        if self.f_star is None:
            raise InvalidInputError(f"Problem '{self.name}' has unknown f*; Δ₀ is undefined")
        return max(0.0, self.initial_value - self.f_star)

    def distance_to_solution(self, x) -> Optional[float]:
        if self.distance_fn is None:
            return None
        return float(self.distance_fn(np.asarray(x, dtype=float)))


@dataclass
class QueryLedger:
    """Counts function evaluations charged to one trajectory."""

    count: int = 0

    def charge(self, queries: int = 1):
        self.count += queries


def _validate_point(problem: ProblemSpec, x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.shape != (problem.d,):
        raise InvalidInputError(f"Point has shape {x.shape}, problem '{problem.name}' expects ({problem.d},)")
    if not np.isfinite(x).all():
        raise InvalidInputError(f"Point has non-finite coordinates: {x.tolist()}")
    return x


def evaluate(problem: ProblemSpec, x, ledger: QueryLedger) -> float:
    """Returns f(x) and charges one query."""
    x = _validate_point(problem, x)
    value = float(problem.objective(x))
    ledger.charge()
    if not np.isfinite(value):
        raise OracleOverflowError(x, value)
    return value


def gradient_reference(problem: ProblemSpec, x) -> np.ndarray:
    """Analytic ∇f(x); never charged to a ledger."""
    x = _validate_point(problem, x)
    grad = np.asarray(problem.gradient(x), dtype=float)
    if not np.isfinite(grad).all():
        raise OracleOverflowError(x)
    return grad


def level_radius(problem: ProblemSpec, B: float) -> Optional[float]:
    """sup{dist(x, X*) : f(x) ≤ f(x₀) + B}, or None when no analytic form exists."""
    if B < 0:
        raise InvalidInputError(f"Level-set enlargement B must be non-negative, got {B}")
    if problem.f_star is None:
        raise InvalidInputError(f"Problem '{problem.name}' has unknown f*; level radius is undefined")
    if problem.radius_fn is None:
        return None
    height = max(0.0, problem.initial_value + B - problem.f_star)
    return float(problem.radius_fn(height))
