"""
hpzo Monte Carlo Runner
Runs independent seeded trajectories, folds them into an McSummary and
compares the empirical (1−δ)-quantile against the matching guarantee.
"""

import logging
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
from scipy.stats import binomtest

from ..config import settings
from ..core.oracles import ProblemSpec, Regime, build_problem, level_radius
from ..core.optimizer import RunParams, run_trajectory
from ..core.sampling import SeedStream
from ..core.schedules import ScheduleReport, cvx_schedule, nc_schedule, sc_schedule
from ..core.theory import BoundInputs, check_events, cvx_bound, event_shares, nc_bound, pathwise_checks, sc_bound
from ..errors import HarnessError, HorizonTooShortError, InvalidInputError, OracleOverflowError
from .config import ExperimentConfig
from .summary import McSummary, TrialSummary

logger = logging.getLogger(__name__)

CERTIFIED_QUANTITY = {
    Regime.STRONGLY_CONVEX: "final_gap",
    Regime.CONVEX: "final_gap",
    Regime.NONCONVEX: "average_grad_norm_sq",
}


@dataclass(frozen=True)
class TrialTask:
    """Plain-data description of one trial; rebuilt inside the worker."""

    problem_name: str
    problem_params: Dict[str, Any]
    regime: Regime
    T: int
    alpha: float
    delta: float
    epsilon: float
    L_used: float
    master_seed: int
    trial_index: int
    bound_inputs: BoundInputs
    check_pathwise: bool


def resolve_schedule(
    problem: ProblemSpec, regime: Regime, epsilon: float, delta: float, radius_override: Optional[float] = None
) -> Tuple[ScheduleReport, str]:
    """Schedule for the problem's declared constants, plus how the radius was obtained."""
    if not regime.admits(problem.regime):
        raise InvalidInputError(
            f"Problem '{problem.name}' is {problem.regime.value}; it does not satisfy the {regime.value} assumptions"
        )
    if problem.f_star is None:
        raise InvalidInputError(f"Problem '{problem.name}' has unknown f*; no certificate can be evaluated")

    L = problem.smoothness_L
    if regime is Regime.STRONGLY_CONVEX:
        return sc_schedule(problem.d, L, problem.strong_convexity_mu, problem.initial_gap, epsilon, delta), "exact"
    if regime is Regime.CONVEX:
        radius = level_radius(problem, epsilon / 4.0)
        label = "exact"
        if radius is None:
            if radius_override is None:
                raise InvalidInputError(
                    f"Problem '{problem.name}' has no analytic level-set radius; set level_radius in the config"
                )
            radius, label = radius_override, "conditional"
        return cvx_schedule(problem.d, L, radius, epsilon, delta), label
    return nc_schedule(problem.d, L, problem.initial_gap, epsilon, delta), "exact"


def theory_bound(
    problem: ProblemSpec, regime: Regime, inputs: BoundInputs, radius_override: Optional[float] = None
) -> Tuple[Optional[float], str]:
    """Evaluates the guarantee matching `regime`; the label says whether R was analytic."""
    if regime is Regime.STRONGLY_CONVEX:
        return sc_bound(inputs), "exact"
    if regime is Regime.NONCONVEX:
        return nc_bound(inputs), "exact"
    radius = level_radius(problem, inputs.A_alpha_T)
    label = "exact"
    if radius is None:
        if radius_override is None:
            return None, "unavailable"
        radius, label = radius_override, "conditional"
    try:
        bound = cvx_bound(replace(inputs, R=radius), simple=True)
    except HorizonTooShortError as e:
        logger.warning(f"Convex bound unavailable: {e}")
        return None, "unavailable"
    return bound, label


def _run_trial(task: TrialTask) -> TrialSummary:
    """Worker entry point: one trajectory, its events and its pathwise checks."""
    try:
        problem = build_problem(task.problem_name, task.problem_params)
        params = RunParams(
            T=task.T,
            alpha=task.alpha,
            delta=task.delta,
            epsilon=task.epsilon,
            L_used=task.L_used,
            stream=SeedStream(task.master_seed, task.trial_index),
        )
        record = run_trajectory(problem, params)
        pathwise = pathwise_checks(record, problem).total_violations if task.check_pathwise else 0
        if not record.completed:
            return TrialSummary(
                trial_index=task.trial_index,
                queries=record.queries.count,
                rejections=record.rejections,
                failed_run=True,
                error=record.error,
                pathwise_violations=pathwise,
            )

        final_gap = record.f_final - problem.f_star
        average = record.average_grad_norm_sq
        certified = average if task.regime is Regime.NONCONVEX else final_gap
        events = check_events(record, task.bound_inputs)
        flags = {
            "rho1": events.holds_rho1,
            "rho2": events.holds_rho2,
            "alpha": events.holds_alpha,
            "alpha_cvx": events.holds_alpha_cvx,
            "u_sum": events.holds_u_sum,
            "weighted": events.holds_weighted,
        }
        return TrialSummary(
            trial_index=task.trial_index,
            final_quantity=certified,
            final_gap=final_gap,
            average_grad_norm_sq=average,
            min_grad_norm_sq=record.min_grad_norm_sq,
            queries=record.queries.count,
            rejections=record.rejections,
            events=flags,
            pathwise_violations=pathwise,
        )
    except OracleOverflowError as e:
        logger.error(f"Trial {task.trial_index} failed: {e}")
        return TrialSummary(trial_index=task.trial_index, failed_run=True, error=str(e))


def order_statistic(sorted_values: np.ndarray, level: float) -> Optional[float]:
    """Order statistic at ceil(level·n), 1-indexed."""
    n = sorted_values.size
    if n == 0:
        return None
    rank = min(n, max(1, math.ceil(level * n - 1e-12)))
    return float(sorted_values[rank - 1])


def summarize(
    config: ExperimentConfig,
    results: List[TrialSummary],
    schedule: Optional[ScheduleReport],
    T: int,
    alpha: float,
    bound: Optional[float],
    bound_label: str,
    wall_time: float,
) -> McSummary:
    """Single-threaded fold over index-sorted trial results."""
    results = sorted(results, key=lambda trial: trial.trial_index)
    delta, epsilon = config.delta, config.epsilon
    succeeded = [trial for trial in results if not trial.failed_run]
    values = np.sort(np.array([trial.final_quantity for trial in succeeded], dtype=float))
    n = values.size

    failure_count = int((values > epsilon).sum())
    failure_rate = failure_count / n if n else 0.0
    failure_ci = list(binomtest(failure_count, n).proportion_ci(confidence_level=0.95, method="exact")) if n else [0.0, 1.0]
    margin = settings.sigma_margin * math.sqrt(delta * (1.0 - delta) / n) if n else 0.0

    shares = event_shares(delta, config.regime is Regime.STRONGLY_CONVEX)
    event_rates = {}
    for name in shares:
        flags = [trial.events.get(name) for trial in succeeded if trial.events.get(name) is not None]
        event_rates[name] = (sum(1 for holds in flags if not holds) / len(flags)) if flags else 0.0

    upper = order_statistic(values, 1.0 - delta)
    dominated = None if bound is None or upper is None else bool(upper <= bound)
    return McSummary(
        problem=config.problem.name,
        regime=config.regime,
        certified_quantity=CERTIFIED_QUANTITY[config.regime],
        epsilon=epsilon,
        delta=delta,
        trials=config.trials,
        master_seed=config.master_seed,
        T=T,
        alpha=alpha,
        schedule=schedule,
        overrides_applied=config.overrides is not None,
        trial_results=results,
        quantiles={"0.5": order_statistic(values, 0.5), "0.9": order_statistic(values, 0.9), "1-delta": upper},
        failure_count=failure_count,
        failure_rate=failure_rate,
        failure_ci=[float(failure_ci[0]), float(failure_ci[1])],
        failure_threshold=delta + margin,
        event_failure_rates=event_rates,
        event_delta_shares={name: shares[name] for name in event_rates},
        theory_bound=bound,
        bound_label=bound_label,
        dominated=dominated,
        failed_runs=len(results) - len(succeeded),
        pathwise_violations=sum(trial.pathwise_violations for trial in results),
        total_queries=sum(trial.queries for trial in results),
        wall_time_seconds=wall_time,
    )


def run_monte_carlo(config: ExperimentConfig) -> McSummary:
    """Runs the experiment described by `config` and returns its summary."""
    logger.info("=" * 60)
    logger.info(f"Monte Carlo: {config.problem.name} / {config.regime.value}, trials={config.trials}")
    logger.info("=" * 60)
    start_time = time.perf_counter()

    logger.info("[STEP 1/4] Building problem and schedule...")
    problem = build_problem(config.problem.name, config.problem.params)
    overrides = config.overrides
    schedule, radius_label = None, "exact"
    try:
        schedule, radius_label = resolve_schedule(
            problem, config.regime, config.epsilon, config.delta, config.level_radius
        )
    except InvalidInputError:
        if overrides is None or overrides.T is None or overrides.alpha is None:
            raise
        logger.warning("No schedule for this problem; running with explicit overrides only")

    T = overrides.T if overrides is not None and overrides.T is not None else schedule.T
    alpha = overrides.alpha if overrides is not None and overrides.alpha is not None else schedule.alpha
    if not T or alpha is None:
        raise HarnessError(f"Schedule status '{schedule.status}' needs no iterations; nothing to run")
    L_used = config.L_used or problem.smoothness_L
    logger.info(f"Using T={T}, alpha={alpha:.6e}, L_used={L_used}")

    inputs = BoundInputs(
        d=problem.d,
        L=L_used,
        alpha=alpha,
        T=T,
        delta=config.delta,
        Delta0=problem.initial_gap,
        mu=problem.strong_convexity_mu if config.regime is Regime.STRONGLY_CONVEX else None,
    )

    logger.info(f"[STEP 2/4] Running {config.trials} trials (parallelism={config.parallelism})...")
    tasks = [
        TrialTask(
            problem_name=config.problem.name,
            problem_params=dict(config.problem.params),
            regime=config.regime,
            T=T,
            alpha=alpha,
            delta=config.delta,
            epsilon=config.epsilon,
            L_used=L_used,
            master_seed=config.master_seed,
            trial_index=index,
            bound_inputs=inputs,
            check_pathwise=config.check_pathwise,
        )
        for index in range(config.trials)
    ]
    if config.parallelism > 1:
        chunksize = max(1, config.trials // (4 * config.parallelism))
        with ProcessPoolExecutor(max_workers=config.parallelism) as executor:
            results = list(executor.map(_run_trial, tasks, chunksize=chunksize))
    else:
        results = [_run_trial(task) for task in tasks]

    failed = sum(1 for trial in results if trial.failed_run)
    if failed / config.trials > settings.failed_run_tolerance:
        raise HarnessError(
            f"{failed}/{config.trials} trials failed, above the {settings.failed_run_tolerance:.0%} tolerance"
        )

    logger.info("[STEP 3/4] Evaluating the theory bound...")
    bound, bound_label = theory_bound(problem, config.regime, inputs, config.level_radius)
    if bound_label == "exact" and radius_label == "conditional":
        bound_label = "conditional"

    logger.info("[STEP 4/4] Aggregating results...")
    summary = summarize(config, results, schedule, T, alpha, bound, bound_label, time.perf_counter() - start_time)

    logger.info(
        f"Failure rate {summary.failure_rate:.4f} (threshold {summary.failure_threshold:.4f}); "
        f"(1-δ)-quantile {summary.quantiles['1-delta']} vs bound {summary.theory_bound} [{summary.bound_label}]"
    )
    logger.info(f"Monte Carlo completed in {summary.wall_time_seconds:.2f} seconds")
    return summary
