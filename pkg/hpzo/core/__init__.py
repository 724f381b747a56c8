"""
hpzo Core - the numerical modules and the single-trajectory pipeline.
Contains the entry point shared by the CLI `run` command and the API.
"""

import logging
import time
from typing import Any, Dict, Optional

from ..errors import InvalidInputError
from .optimizer import RunParams, TrajectoryRecord, run_trajectory
from .oracles import Regime, build_problem
from .sampling import SeedStream
from .schedules import ScheduleReport, cvx_schedule, nc_schedule, sc_schedule
from .theory import BoundInputs, cvx_bound, nc_bound, sc_bound

logger = logging.getLogger(__name__)


def run_single_trajectory(
    problem_name: str,
    problem_params: Optional[Dict[str, Any]] = None,
    T: int = 100,
    alpha: float = 1e-3,
    delta: float = 0.1,
    epsilon: float = 1.0,
    L_used: Optional[float] = None,
    seed: int = 0,
    stream_index: int = 0,
) -> Dict[str, Any]:
    """
    Runs one trajectory and returns its record with a printable summary.

    Returns:
        dict with "status", "record" (TrajectoryRecord) and "summary" (plain values)
    """
    logger.info(f"Starting single run on '{problem_name}' (T={T}, alpha={alpha}, seed={seed}, stream={stream_index})")
    start_time = time.time()

    logger.info("[STEP 1/2] Building problem...")
    problem = build_problem(problem_name, problem_params)
    params = RunParams(
        T=T,
        alpha=alpha,
        delta=delta,
        epsilon=epsilon,
        L_used=L_used or problem.smoothness_L,
        stream=SeedStream(seed, stream_index),
    )

    logger.info("[STEP 2/2] Running trajectory...")
    record: TrajectoryRecord = run_trajectory(problem, params)
    runtime = time.time() - start_time

    summary = {
        "status": "completed" if record.completed else "failed",
        "problem": problem.name,
        "d": problem.d,
        "T": T,
        "alpha": alpha,
        "L_used": params.L_used,
        "f_initial": problem.initial_value,
        "f_final": record.f_final,
        "final_gap": None if problem.f_star is None else record.f_final - problem.f_star,
        "average_grad_norm_sq": record.average_grad_norm_sq,
        "min_grad_norm_sq": record.min_grad_norm_sq,
        "queries": record.queries.count,
        "rejections": record.rejections,
        "error": record.error,
        "runtime_seconds": round(runtime, 4),
    }
    if record.completed:
        logger.info(f"Run completed in {runtime:.2f} seconds (f_final={record.f_final:.6e})")
    else:
        logger.error(f"Run aborted after {record.completed_steps} steps: {record.error}")
    return {"status": summary["status"], "record": record, "problem": problem, "summary": summary}


def _require(regime: Regime, **values):
    missing = [name for name, value in values.items() if value is None]
    if missing:
        raise InvalidInputError(f"Regime {regime.value} requires {', '.join(missing)}")


def schedule_for(
    regime,
    d: int,
    L: float,
    delta: float,
    epsilon: Optional[float] = None,
    mu: Optional[float] = None,
    Delta0: Optional[float] = None,
    R: Optional[float] = None,
) -> ScheduleReport:
    """Dispatches to the regime's schedule, checking that its constants are present."""
    regime = Regime.parse(regime)
    if regime is Regime.STRONGLY_CONVEX:
        _require(regime, mu=mu, Delta0=Delta0, epsilon=epsilon)
        return sc_schedule(d, L, mu, Delta0, epsilon, delta)
    if regime is Regime.CONVEX:
        _require(regime, R=R, epsilon=epsilon)
        return cvx_schedule(d, L, R, epsilon, delta)
    _require(regime, Delta0=Delta0, epsilon=epsilon)
    return nc_schedule(d, L, Delta0, epsilon, delta)


def guarantee_for(
    regime,
    d: int,
    L: float,
    delta: float,
    T: Optional[int] = None,
    alpha: Optional[float] = None,
    epsilon: Optional[float] = None,
    mu: Optional[float] = None,
    Delta0: Optional[float] = None,
    R: Optional[float] = None,
    simple: bool = True,
) -> Dict[str, Any]:
    """
    Evaluates the regime's high-probability guarantee at (T, α).
    Missing T or α are taken from the regime's schedule, which then needs ε.
    """
    regime = Regime.parse(regime)
    if T is None or alpha is None:
        schedule = schedule_for(regime, d, L, delta, epsilon=epsilon, mu=mu, Delta0=Delta0, R=R)
        if schedule.alpha is None:
            raise InvalidInputError(f"Schedule for {regime.value} is {schedule.status}; pass T and alpha explicitly")
        T = schedule.T if T is None else T
        alpha = schedule.alpha if alpha is None else alpha

    if regime is Regime.STRONGLY_CONVEX:
        _require(regime, mu=mu, Delta0=Delta0)
    elif regime is Regime.CONVEX:
        _require(regime, R=R)
    else:
        _require(regime, Delta0=Delta0)

    inputs = BoundInputs(
        d=d,
        L=L,
        alpha=alpha,
        T=T,
        delta=delta,
        Delta0=Delta0 if Delta0 is not None else 0.0,
        mu=mu if regime is Regime.STRONGLY_CONVEX else None,
        R=R,
    )
    if regime is Regime.STRONGLY_CONVEX:
        bound = sc_bound(inputs)
    elif regime is Regime.CONVEX:
        bound = cvx_bound(inputs, simple=simple)
    else:
        bound = nc_bound(inputs)
    return {"regime": regime.value, "T": T, "alpha": alpha, "bound": bound, "bound_rounded": round(bound, 12)}


__all__ = ["guarantee_for", "run_single_trajectory", "schedule_for"]
