"""
Theorem bound evaluators and the ρ weight sequence.

Each evaluator returns the exact right-hand side of its high-probability
guarantee for given (d, L, μ, α, T, δ, Δ₀, R).
"""

import logging
import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from ...errors import HorizonTooShortError, InvalidDimensionError, InvalidInputError
from ..schedules import accumulation_scale, sc_smoothing_factor

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BoundInputs:
    d: int
    L: float
    alpha: float
    T: int
    delta: float
    Delta0: float
    mu: Optional[float] = None
    R: Optional[float] = None

    def __post_init__(self):
        if self.d < 1:
            raise InvalidDimensionError(f"Dimension must be positive, got {self.d}")
        if not self.L > 0:
            raise InvalidInputError(f"L must be positive, got {self.L}")
        if self.alpha < 0:
            raise InvalidInputError(f"alpha must be non-negative, got {self.alpha}")
        if not 0 < self.delta < 1:
            raise InvalidInputError(f"delta must lie in (0, 1), got {self.delta}")
        if self.Delta0 < 0:
            raise InvalidInputError(f"Delta0 must be non-negative, got {self.Delta0}")
        if self.mu is not None and not 0 < self.mu <= self.L:
            raise InvalidInputError(f"mu must satisfy 0 < mu <= L, got mu={self.mu}, L={self.L}")
        if self.R is not None and self.R < 0:
            raise InvalidInputError(f"R must be non-negative, got {self.R}")

    def _require_horizon(self):
        if isinstance(self.T, bool) or not isinstance(self.T, (int, np.integer)) or self.T < 1:
            raise InvalidInputError(f"Horizon T must be a positive integer, got {self.T!r}")

    @property
    def A_alpha_T(self) -> float:
        self._require_horizon()
        return accumulation_scale(self.d, int(self.T), self.delta, self.L, self.alpha).A_alpha_T


def sc_decay_term(inputs: BoundInputs) -> float:
    """exp(−(μ/8L)(T/2d − 6log(3/δ)/d))·Δ₀."""
    inputs._require_horizon()
    if inputs.mu is None:
        raise InvalidInputError("Strongly convex bound needs mu")
    d, L, mu = inputs.d, inputs.L, inputs.mu
    exponent = -(mu / (8.0 * L)) * (inputs.T / (2.0 * d) - 6.0 * math.log(3.0 / inputs.delta) / d)
    return math.exp(exponent) * inputs.Delta0


def sc_bound(inputs: BoundInputs) -> float:
    """f(x_T) − f* with probability ≥ 1 − δ under strong convexity."""
    decay = sc_decay_term(inputs)
    d, L = inputs.d, inputs.L
    smoothing = d * L * inputs.alpha ** 2 / 16.0 * sc_smoothing_factor(d, L, inputs.mu, inputs.delta, int(inputs.T))
    return decay + smoothing


def _convex_horizon_slack(inputs: BoundInputs) -> float:
    inputs._require_horizon()
    if inputs.R is None:
        raise InvalidInputError("Convex bound needs the level-set radius R")
    slack = inputs.T - 12.0 * math.log(2.0 / inputs.delta)
    if not slack > 0:
        raise HorizonTooShortError(
            f"Convex bound needs T > 12·log(2/δ) = {12.0 * math.log(2.0 / inputs.delta):.4f}, got T={inputs.T}"
        )
    return slack


def cvx_bound(inputs: BoundInputs, simple: bool = False) -> float:
    """f(x_T) − f* with probability ≥ 1 − δ under convexity (full or simplified form)."""
    slack = _convex_horizon_slack(inputs)
    A = inputs.A_alpha_T
    spread = 128.0 * inputs.d * inputs.L * inputs.R ** 2
    if simple:
        return 2.0 * A + spread / slack
    if inputs.Delta0 + A == 0 or spread == 0:
        return 2.0 * A
    return 2.0 * A + 1.0 / (1.0 / (inputs.Delta0 + A) + slack / spread)


def nc_bound(inputs: BoundInputs) -> float:
    """(1/T)·Σ‖∇f(x_t)‖² with probability ≥ 1 − δ for smooth lower-bounded f."""
    inputs._require_horizon()
    tau = math.log(2.0 / inputs.delta)
    return inputs.L * (32.0 * inputs.d + 16.0 * tau) * (inputs.Delta0 + inputs.A_alpha_T) / inputs.T


def nc_min_bound(inputs: BoundInputs) -> float:
    """min_t ‖∇f(x_t)‖² is at most the trajectory average, so the same value applies."""
    return nc_bound(inputs)


def gradient_ceiling(L: float, Delta0: float, A: float) -> float:
    """B_{α,T} = 2L(Δ₀ + A): caps every ‖∇f(x_t)‖² on the smoothing event."""
    if not L > 0 or Delta0 < 0 or A < 0:
        raise InvalidInputError("gradient_ceiling needs L > 0 and non-negative Delta0, A")
    return 2.0 * L * (Delta0 + A)


def rho_weights(T: int, d: int, mu: float, L: float, delta2: float) -> np.ndarray:
    """ρ_k = min{1, exp(−(μ/8L)((T−k−501)/(2d) − (250/d)(log(1/δ₂) + loglog(2(T−k)))))}, k = 0..T−1."""
    if T < 1 or d < 1 or not 0 < mu <= L or not 0 < delta2 < 1:
        raise InvalidInputError(f"rho_weights got invalid inputs T={T}, d={d}, mu={mu}, L={L}, delta2={delta2}")
    m = T - np.arange(T, dtype=float)
    bracket = (m - 501.0) / (2.0 * d) - 250.0 / d * (math.log(1.0 / delta2) + np.log(np.log(2.0 * m)))
    exponent = -(mu / (8.0 * L)) * bracket
    return np.exp(np.minimum(exponent, 0.0))


def rho_sum_caps(T: int, d: int, mu: float, L: float, delta2: float) -> Tuple[float, float]:
    """Closed-form caps on Σρ_k and Σρ_k²."""
    head = 502.0 + 500.0 * (math.log(1.0 / delta2) + math.log(math.log(2.0 * T)))
    return head + 16.0 * L * d / mu, head + 8.0 * L * d / mu


def sc_alpha_event_cap(d: int, L: float, mu: float, T: int, delta2: float, delta_alpha: float) -> float:
    """d(1004 + 1000(log(1/δ₂) + loglog(2T)) + 32dL/μ + 3log(1/δ_α)): cap on Σρ_k‖u_k‖²."""
    return d * (
        1004.0
        + 1000.0 * (math.log(1.0 / delta2) + math.log(math.log(2.0 * T)))
        + 32.0 * d * L / mu
        + 3.0 * math.log(1.0 / delta_alpha)
    )
