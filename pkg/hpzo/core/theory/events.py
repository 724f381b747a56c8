"""
Trajectory-level checks: the probabilistic events behind each guarantee and
the deterministic per-step inequalities every run must satisfy.
"""

import logging
import math
from typing import Dict, Optional

import numpy as np
from pydantic import BaseModel, Field

from ...errors import InvalidInputError
from ..oracles import ProblemSpec, Regime
from ..optimizer import TrajectoryRecord
from ..schedules import accumulation_scale
from .bounds import BoundInputs, gradient_ceiling, rho_weights, sc_alpha_event_cap
from .concentration import FloorMode, projection_floors

logger = logging.getLogger(__name__)

ONE_STEP_TOLERANCE = 1e-8
ABSOLUTE_SLACK = 1e-9
ETA_TOLERANCE = 1e-12


class EventReport(BaseModel):
    holds_rho1: bool
    holds_rho2: bool
    holds_alpha: Optional[bool] = None
    holds_alpha_cvx: bool
    holds_u_sum: bool
    holds_weighted: bool
    delta_share: float
    margins: Dict[str, float] = Field(default_factory=dict)

    def failed_events(self) -> Dict[str, bool]:
        flags = {
            "rho1": self.holds_rho1,
            "rho2": self.holds_rho2,
            "alpha": self.holds_alpha,
            "alpha_cvx": self.holds_alpha_cvx,
            "u_sum": self.holds_u_sum,
            "weighted": self.holds_weighted,
        }
        return {name: not holds for name, holds in flags.items() if holds is not None}


class PathwiseReport(BaseModel):
    steps_checked: int
    violations: Dict[str, int]

    @property
    def total_violations(self) -> int:
        return sum(self.violations.values())


def check_events(trajectory: TrajectoryRecord, inputs: BoundInputs) -> EventReport:
    """Evaluates each event's defining inequality on the recorded sequences.

    With μ present the strongly convex split applies (δ/3 per event);
    otherwise each event gets δ/2. The smoothing-sum event uses A_{α,T}(δ),
    which already carries the δ/2 share through τ = log(2/δ).
    """
    T = int(inputs.T)
    if trajectory.completed_steps != T:
        raise InvalidInputError(f"Trajectory has {trajectory.completed_steps} steps, inputs declare T={T}")
    d, L = inputs.d, inputs.L
    share = inputs.delta / 3.0 if inputs.mu is not None else inputs.delta / 2.0
    zeta = trajectory.zeta
    margins: Dict[str, float] = {}

    margins["rho1"] = float(zeta.sum()) - projection_floors(T, 0, d, share, FloorMode.UNWEIGHTED)

    if T >= 2:
        suffix = np.cumsum(zeta[::-1])[::-1][1:]
        m = T - np.arange(T - 1, dtype=float)
        floors = (m - 501.0) / (2.0 * d) - 250.0 / d * (math.log(1.0 / share) + np.log(np.log(2.0 * m)))
        margins["rho2"] = float((suffix - floors).min())
    else:
        margins["rho2"] = 0.0

    holds_alpha = None
    if inputs.mu is not None:
        rho = rho_weights(T, d, inputs.mu, L, share)
        cap = sc_alpha_event_cap(d, L, inputs.mu, T, share, share)
        margins["alpha"] = cap - float(rho @ trajectory.u_norm_sq)
        holds_alpha = margins["alpha"] >= 0

    scale = accumulation_scale(d, T, inputs.delta, L, inputs.alpha)
    margins["alpha_cvx"] = scale.A_alpha_T - float(trajectory.delta_alpha.sum())
    margins["u_sum"] = scale.U_T - float(trajectory.u_norm_sq.sum())

    ceiling = gradient_ceiling(L, inputs.Delta0, scale.A_alpha_T)
    w = trajectory.grad_norm_sq
    weighted_floor = projection_floors(T, 0, d, share, FloorMode.WEIGHTED, sum_w=float(w.sum()), B=ceiling)
    margins["weighted"] = float(zeta @ w) - weighted_floor

    return EventReport(
        holds_rho1=margins["rho1"] >= 0,
        holds_rho2=margins["rho2"] >= 0,
        holds_alpha=holds_alpha,
        holds_alpha_cvx=margins["alpha_cvx"] >= 0,
        holds_u_sum=margins["u_sum"] >= 0,
        holds_weighted=margins["weighted"] >= 0,
        delta_share=share,
        margins=margins,
    )


def pathwise_checks(trajectory: TrajectoryRecord, problem: ProblemSpec) -> PathwiseReport:
    """Counts violations of the inequalities that hold on every path."""
    n = trajectory.completed_steps
    L = trajectory.L_used
    alpha = trajectory.alpha
    f = trajectory.f_path
    f_now, f_next = f[:-1], f[1:]
    zeta = trajectory.zeta
    w = trajectory.grad_norm_sq
    u_norm_sq = trajectory.u_norm_sq
    delta_alpha = trajectory.delta_alpha
    scale_tol = ONE_STEP_TOLERANCE * (1.0 + np.abs(f_now))

    violations = {
        "one_step_descent": int((f_next > f_now - zeta * w / (16.0 * L) + delta_alpha + scale_tol).sum()),
        "residual_bound": int((np.abs(trajectory.beta) > L * alpha * u_norm_sq / 2.0 + ABSOLUTE_SLACK).sum()),
        "smoothing_error_bound": int((delta_alpha > L * alpha ** 2 * u_norm_sq / 16.0 + ABSOLUTE_SLACK).sum()),
        "telescoping": int((f_next > f_now + delta_alpha + ABSOLUTE_SLACK).sum()),
        "normalized_stepsize": int((np.abs(trajectory.eta * 4.0 * L * u_norm_sq - 1.0) > ETA_TOLERANCE).sum()),
        "projection_range": int(((zeta < 0.0) | (zeta > 1.0)).sum()),
    }

    if problem.regime is Regime.STRONGLY_CONVEX and problem.f_star is not None and n > 0:
        contraction = 1.0 - problem.strong_convexity_mu * zeta / (8.0 * L)
        gap_now, gap_next = f_now - problem.f_star, f_next - problem.f_star
        violations["strongly_convex_contraction"] = int(
            (gap_next > contraction * gap_now + delta_alpha + scale_tol).sum()
        )
        envelope = gap_now[0]
        for t in range(n):
            envelope = contraction[t] * envelope + delta_alpha[t]
        tolerance = ONE_STEP_TOLERANCE * (1.0 + abs(f[0])) * n
        violations["accumulated_contraction"] = int(gap_next[-1] > envelope + tolerance)

    report = PathwiseReport(steps_checked=n, violations=violations)
    if report.total_violations:
        logger.warning(f"Pathwise violations on '{problem.name}' (stream {trajectory.stream_index}): {violations}")
    return report


def event_shares(delta: float, strongly_convex: bool) -> Dict[str, float]:
    """Failure probability allotted to each event in the matching guarantee."""
    share = delta / 3.0 if strongly_convex else delta / 2.0
    shares = {
        "rho1": share,
        "rho2": share,
        "alpha_cvx": delta / 2.0,
        "u_sum": delta / 2.0,
        "weighted": share,
    }
    if strongly_convex:
        shares["alpha"] = share
    return shares
