"""
Parameter schedules: turn (problem constants, ε, δ) into an admissible (T, α).

The universal constants left open by the order-level statements are fixed by
solving the sufficient conditions exactly:
  strongly convex  the smoothing term of the bound equals ε/2
  convex           A_{α,T}(δ) = ε/4
  nonconvex        A_{α,T}(δ) = Δ₀
"""

import logging
import math
from typing import Dict, List, Optional

from pydantic import BaseModel, Field

from ...errors import InvalidDimensionError, InvalidInputError
from ..oracles import Regime

logger = logging.getLogger(__name__)

ORDER_LEVEL = "order-level"


class AccumulationScale(BaseModel):
    tau_delta: float
    U_T: float
    A_alpha_T: float


class MarkovBaseline(BaseModel):
    regime: Regime
    N: float
    alpha: float
    label: str = ORDER_LEVEL


class ScheduleReport(BaseModel):
    regime: Regime
    status: str = "scheduled"
    d: int
    L: float
    epsilon: float
    delta: float
    T_raw: float
    T: int
    alpha: Optional[float]
    alpha_solved: Optional[float] = None
    alpha_order_cap: Optional[float] = None
    tau_delta: float
    U_T: float
    A_alpha_T: float
    terms: Dict[str, float] = Field(default_factory=dict)
    baseline_N: float
    baseline_alpha: float
    baseline_label: str = ORDER_LEVEL
    notes: List[str] = Field(default_factory=list)

    @property
    def accumulation(self) -> AccumulationScale:
        return AccumulationScale(tau_delta=self.tau_delta, U_T=self.U_T, A_alpha_T=self.A_alpha_T)

    @property
    def queries(self) -> int:
        return 2 * self.T


def _check_dimension(d) -> int:
    if isinstance(d, bool) or not isinstance(d, int) or d < 1:
        raise InvalidDimensionError(f"Dimension must be a positive integer, got {d!r}")
    return d


def _check_confidence(delta: float):
    if not 0 < delta < 1:
        raise InvalidInputError(f"Confidence delta must lie in (0, 1), got {delta}")


def _check_positive(name: str, value: float):
    if not value > 0:
        raise InvalidInputError(f"{name} must be positive, got {value}")


def loglog(x: float) -> float:
    """log(log(x)), natural logs; negative for x < e and used as-is."""
    return math.log(math.log(x))


def _loglog_floor(x: float) -> float:
    """max(0, log log x), for the order-level caps where T may be tiny."""
    return loglog(x) if x > math.e else 0.0


def accumulation_scale(d: int, T: int, delta: float, L: float, alpha: float) -> AccumulationScale:
    """τ_δ = log(2/δ), U_T = dT + 2√(dTτ) + 2τ, A = L·α²·U_T/16."""
    _check_dimension(d)
    if isinstance(T, bool) or not isinstance(T, int) or T < 1:
        raise InvalidInputError(f"Horizon T must be a positive integer, got {T!r}")
    _check_confidence(delta)
    _check_positive("L", L)
    if alpha < 0:
        raise InvalidInputError(f"alpha must be non-negative, got {alpha}")
    return _scale(d, T, delta, L, alpha)


def _scale(d: int, T: int, delta: float, L: float, alpha: float) -> AccumulationScale:
    tau = math.log(2.0 / delta)
    dT = d * T
    U_T = dT + 2.0 * math.sqrt(dT * tau) + 2.0 * tau
    return AccumulationScale(tau_delta=tau, U_T=U_T, A_alpha_T=L * alpha * alpha * U_T / 16.0)


def sc_smoothing_factor(d: int, L: float, mu: float, delta: float, T: int) -> float:
    """1004 + 1000(log(3/δ) + loglog(2T)) + 32dL/μ + 3log(3/δ)."""
    log3 = math.log(3.0 / delta)
    return 1004.0 + 1000.0 * (log3 + loglog(2.0 * T)) + 32.0 * d * L / mu + 3.0 * log3


def sc_horizon(d: int, L: float, mu: float, Delta0: float, epsilon: float, delta: float) -> float:
    """(16dL/μ)·log(2Δ₀/ε) + 12·log(3/δ), before the ceiling."""
    return 16.0 * d * L / mu * math.log(2.0 * Delta0 / epsilon) + 12.0 * math.log(3.0 / delta)


def sc_schedule(d: int, L: float, mu: float, Delta0: float, epsilon: float, delta: float) -> ScheduleReport:
    """Horizon and smoothing radius for the strongly convex guarantee."""
    _check_dimension(d)
    _check_confidence(delta)
    _check_positive("L", L)
    _check_positive("mu", mu)
    _check_positive("epsilon", epsilon)
    _check_positive("Delta0", Delta0)
    if mu > L:
        raise InvalidInputError(f"Strong convexity mu={mu} exceeds smoothness L={L}")

    T_raw = sc_horizon(d, L, mu, Delta0, epsilon, delta)
    T = max(1, math.ceil(T_raw))
    factor = sc_smoothing_factor(d, L, mu, delta, T)
    alpha_solved = math.sqrt(8.0 * epsilon / (d * L * factor))
    alpha_order_cap = min(
        math.sqrt(epsilon * mu) / (d * L),
        math.sqrt(epsilon / (d * L * (1.0 + math.log(1.0 / delta) + _loglog_floor(T)))),
    )
    alpha = min(alpha_solved, alpha_order_cap)
    scale = _scale(d, T, delta, L, alpha)
    baseline = markov_baseline(Regime.STRONGLY_CONVEX, d, L, mu, Delta0, epsilon, delta)

    notes = ["alpha solved from dLα²/16·C(T) = ε/2 at the ceiled horizon"]
    if alpha < alpha_solved:
        notes.append("order-level cap is tighter than the solved radius")
    logger.debug(f"sc_schedule: T_raw={T_raw:.4f}, T={T}, alpha={alpha:.6e}")
    return ScheduleReport(
        regime=Regime.STRONGLY_CONVEX,
        d=d,
        L=L,
        epsilon=epsilon,
        delta=delta,
        T_raw=T_raw,
        T=T,
        alpha=alpha,
        alpha_solved=alpha_solved,
        alpha_order_cap=alpha_order_cap,
        tau_delta=scale.tau_delta,
        U_T=scale.U_T,
        A_alpha_T=scale.A_alpha_T,
        terms={"mu": mu, "Delta0": Delta0, "smoothing_factor": factor},
        baseline_N=baseline.N,
        baseline_alpha=baseline.alpha,
        notes=notes,
    )


def cvx_schedule(d: int, L: float, R_eps: float, epsilon: float, delta: float) -> ScheduleReport:
    """Horizon and smoothing radius for the convex guarantee."""
    _check_dimension(d)
    _check_confidence(delta)
    _check_positive("L", L)
    _check_positive("epsilon", epsilon)
    if R_eps < 0:
        raise InvalidInputError(f"Level-set radius R_eps must be non-negative, got {R_eps}")

    tau = math.log(2.0 / delta)
    if R_eps == 0:
        return ScheduleReport(
            regime=Regime.CONVEX,
            status="trivial",
            d=d,
            L=L,
            epsilon=epsilon,
            delta=delta,
            T_raw=0.0,
            T=0,
            alpha=None,
            tau_delta=tau,
            U_T=2.0 * tau,
            A_alpha_T=0.0,
            terms={"R_eps": 0.0},
            baseline_N=0.0,
            baseline_alpha=0.0,
            notes=["x0 already lies in the solution set; no queries are needed"],
        )

    T_raw = 512.0 * d * L * R_eps ** 2 / epsilon + 24.0 * tau
    T = math.ceil(T_raw)
    U_T = _scale(d, T, delta, L, 0.0).U_T
    alpha = math.sqrt(4.0 * epsilon / (L * U_T))
    scale = _scale(d, T, delta, L, alpha)
    alpha_order_cap = min(epsilon / (d * L * R_eps), math.sqrt(epsilon / (d * L * math.log(2.0 / delta))))
    baseline = markov_baseline(Regime.CONVEX, d, L, None, R_eps, epsilon, delta)
    logger.debug(f"cvx_schedule: T_raw={T_raw:.4f}, T={T}, alpha={alpha:.6e}")
    return ScheduleReport(
        regime=Regime.CONVEX,
        d=d,
        L=L,
        epsilon=epsilon,
        delta=delta,
        T_raw=T_raw,
        T=T,
        alpha=alpha,
        alpha_solved=alpha,
        alpha_order_cap=alpha_order_cap,
        tau_delta=scale.tau_delta,
        U_T=scale.U_T,
        A_alpha_T=scale.A_alpha_T,
        terms={"R_eps": R_eps},
        baseline_N=baseline.N,
        baseline_alpha=baseline.alpha,
        notes=["alpha solved from A_{α,T}(δ) = ε/4"],
    )


def nc_schedule(d: int, L: float, Delta0: float, epsilon: float, delta: float) -> ScheduleReport:
    """Horizon and smoothing radius for average stationarity."""
    _check_dimension(d)
    _check_confidence(delta)
    _check_positive("L", L)
    _check_positive("epsilon", epsilon)
    if Delta0 < 0:
        raise InvalidInputError(f"Initial gap Delta0 must be non-negative, got {Delta0}")

    tau = math.log(2.0 / delta)
    if Delta0 == 0:
        return ScheduleReport(
            regime=Regime.NONCONVEX,
            status="already_stationary",
            d=d,
            L=L,
            epsilon=epsilon,
            delta=delta,
            T_raw=0.0,
            T=0,
            alpha=None,
            tau_delta=tau,
            U_T=2.0 * tau,
            A_alpha_T=0.0,
            terms={"Delta0": 0.0, "B_alpha_T": 0.0},
            baseline_N=0.0,
            baseline_alpha=0.0,
            notes=["x0 is a global minimizer, hence stationary"],
        )

    T_raw = 2.0 * L * (32.0 * d + 16.0 * tau) * Delta0 / epsilon
    T = max(1, math.ceil(T_raw))
    U_T = _scale(d, T, delta, L, 0.0).U_T
    alpha = 4.0 * math.sqrt(Delta0 / (L * U_T))
    scale = _scale(d, T, delta, L, alpha)
    alpha_order_cap = min(
        math.sqrt(epsilon) / (L * math.sqrt(d * (d + tau))),
        math.sqrt(Delta0 / (L * tau)),
    )
    baseline = markov_baseline(Regime.NONCONVEX, d, L, None, Delta0, epsilon, delta)
    logger.debug(f"nc_schedule: T_raw={T_raw:.4f}, T={T}, alpha={alpha:.6e}")
    return ScheduleReport(
        regime=Regime.NONCONVEX,
        d=d,
        L=L,
        epsilon=epsilon,
        delta=delta,
        T_raw=T_raw,
        T=T,
        alpha=alpha,
        alpha_solved=alpha,
        alpha_order_cap=alpha_order_cap,
        tau_delta=scale.tau_delta,
        U_T=scale.U_T,
        A_alpha_T=scale.A_alpha_T,
        terms={"Delta0": Delta0, "B_alpha_T": 2.0 * L * (Delta0 + scale.A_alpha_T)},
        baseline_N=baseline.N,
        baseline_alpha=baseline.alpha,
        notes=["alpha = 4·sqrt(Δ₀/(L·U_T)) so that A_{α,T}(δ) = Δ₀"],
    )


def _order_level(regime: Regime, d: int, L: float, mu: Optional[float], R_or_Delta0: float, epsilon: float, delta: float):
    if regime is Regime.STRONGLY_CONVEX:
        if mu is None or not 0 < mu <= L:
            raise InvalidInputError(f"Strongly convex baseline needs 0 < mu <= L, got mu={mu}")
        return d * L / mu * math.log(1.0 / (delta * epsilon)), math.sqrt(delta * epsilon * mu) / (d * L)
    if regime is Regime.CONVEX:
        return d * L * R_or_Delta0 ** 2 / (delta * epsilon), math.sqrt(delta * epsilon / L) / d
    return d * L * R_or_Delta0 / (delta * epsilon), math.sqrt(delta * epsilon) / (d ** 1.5 * L)


def markov_baseline(
    regime, d: int, L: float, mu: Optional[float], R_or_Delta0: float, epsilon: float, delta: float
) -> MarkovBaseline:
    """Expectation guarantee at accuracy δε turned into a (1−δ) guarantee; constants set to 1."""
    regime = Regime.parse(regime)
    _check_dimension(d)
    _check_confidence(delta)
    _check_positive("L", L)
    _check_positive("epsilon", epsilon)
    if R_or_Delta0 < 0:
        raise InvalidInputError(f"R_or_Delta0 must be non-negative, got {R_or_Delta0}")
    N, alpha = _order_level(regime, d, L, mu, R_or_Delta0, epsilon, delta)
    return MarkovBaseline(regime=regime, N=N, alpha=alpha)


def expectation_baseline(
    regime, d: int, L: float, mu: Optional[float], R_or_Delta0: float, epsilon: float
) -> MarkovBaseline:
    """The in-expectation rows (no confidence parameter); constants set to 1."""
    regime = Regime.parse(regime)
    _check_dimension(d)
    _check_positive("L", L)
    _check_positive("epsilon", epsilon)
    N, alpha = _order_level(regime, d, L, mu, R_or_Delta0, epsilon, 1.0)
    return MarkovBaseline(regime=regime, N=N, alpha=alpha)


def leading_order(
    regime, d: int, L: float, mu: Optional[float], R_or_Delta0: float, epsilon: float, delta: float
) -> MarkovBaseline:
    """Order-level (N, α) of the high-probability method itself, constants set to 1."""
    regime = Regime.parse(regime)
    _check_dimension(d)
    _check_confidence(delta)
    _check_positive("L", L)
    _check_positive("epsilon", epsilon)
    log_inv_delta = math.log(1.0 / delta)
    if regime is Regime.STRONGLY_CONVEX:
        if mu is None or not 0 < mu <= L:
            raise InvalidInputError(f"Strongly convex rate needs 0 < mu <= L, got mu={mu}")
        N = d * L / mu * math.log(1.0 / epsilon) + log_inv_delta
        alpha = math.sqrt(epsilon * mu) / (d * L)
    elif regime is Regime.CONVEX:
        N = d * L * R_or_Delta0 ** 2 / epsilon + log_inv_delta
        alpha = math.sqrt(epsilon / (d * L * N))
    else:
        N = L * R_or_Delta0 * (d + log_inv_delta) / epsilon
        alpha = math.sqrt(epsilon) / (L * d)
    return MarkovBaseline(regime=regime, N=N, alpha=alpha)
