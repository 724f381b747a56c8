"""
hpzo Lemma Check Batteries
Monte Carlo and brute-force checks of the distributional facts and
inequalities the guarantees rest on. Each battery returns a BatteryResult;
statistical checks use a declared sigma margin.
"""

import logging
import math
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np
from pydantic import BaseModel, Field
from scipy import stats

from ..config import settings
from ..core.oracles import build_problem
from ..core.optimizer import RunParams, run_trajectory
from ..core.sampling import SeedStream, projection_batch, sample_directions
from ..core.theory import (
    BoundInputs,
    FloorMode,
    beta_raw_moment,
    check_events,
    chi_square_caps,
    event_shares,
    maximal_bernstein_tail,
    perturbed_recursion_cap,
    projection_floors,
    rho_sum_caps,
    rho_weights,
    simulate_perturbed_recursion,
)

logger = logging.getLogger(__name__)

KS_ONE_PERCENT = 1.63


class CheckResult(BaseModel):
    name: str
    passed: bool
    value: float
    threshold: float
    detail: str = ""


class BatteryResult(BaseModel):
    name: str
    seed: int
    samples: int
    checks: List[CheckResult] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def add(self, name: str, value: float, threshold: float, upper: bool = True, detail: str = ""):
        passed = value <= threshold if upper else value >= threshold
        self.checks.append(CheckResult(name=name, passed=bool(passed), value=float(value), threshold=float(threshold), detail=detail))


def _binomial_margin(p: float, n: int, sigma: float) -> float:
    return sigma * math.sqrt(p * (1.0 - p) / n)


def _unit_axis(seed: int, d: int) -> np.ndarray:
    axis = np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=(10**6 + d,)))).standard_normal(d)
    return axis / np.linalg.norm(axis)


def distributional_battery(
    seed: int,
    samples: int,
    dims: Sequence[int] = (2, 3, 10, 100),
    sigma: Optional[float] = None,
    ks_coefficient: float = KS_ONE_PERCENT,
) -> BatteryResult:
    """ζ against Beta(1/2, (d−1)/2): KS distance, mean, and the first three raw moments."""
    sigma = settings.sigma_margin if sigma is None else sigma
    result = BatteryResult(name="distributional", seed=seed, samples=samples)
    for d in dims:
        stream = SeedStream(seed, d)
        zeta = projection_batch(sample_directions(stream, d, samples), _unit_axis(seed, d))
        a, b = 0.5, (d - 1) / 2.0
        ks = stats.kstest(zeta, stats.beta(a, b).cdf).statistic
        result.add(f"ks_d{d}", ks, ks_coefficient / math.sqrt(samples))

        variance = 2.0 * (d - 1) / (d * d * (d + 2.0))
        result.add(f"mean_d{d}", abs(zeta.mean() - 1.0 / d), sigma * math.sqrt(variance / samples))

        for m in (1, 2, 3):
            moment = beta_raw_moment(a, b, m)
            spread = beta_raw_moment(a, b, 2 * m) - moment * moment
            empirical = float(np.mean(zeta ** m))
            result.add(f"moment{m}_d{d}", abs(empirical - moment), sigma * math.sqrt(spread / samples))
    return result


def concentration_battery(seed: int, samples: int, sigma: Optional[float] = None) -> BatteryResult:
    """Chi-square caps, the maximal Bernstein tail and the unweighted projection floor."""
    sigma = settings.sigma_margin if sigma is None else sigma
    result = BatteryResult(name="concentration", seed=seed, samples=samples)
    generator = SeedStream(seed, 0).generator

    for k in (10, 100):
        draws = generator.chisquare(k, size=samples)
        for tau in (1.0, math.log(20.0)):
            upper, lower = chi_square_caps(k, tau)
            p = math.exp(-tau)
            margin = _binomial_margin(p, samples, sigma)
            result.add(f"chi2_upper_k{k}_tau{tau:.3f}", float((draws > upper).mean()), p + margin)
            result.add(f"chi2_lower_k{k}_tau{tau:.3f}", float((draws < lower).mean()), p + margin)

    # Rademacher increments: v² = 1, and E|D|^m = 1 ≤ m!/2 gives b = 1
    paths = max(1000, samples // 10)
    N = 100
    increments = generator.choice(np.array([-1.0, 1.0]), size=(paths, N))
    running_max = np.maximum.accumulate(np.cumsum(increments, axis=1), axis=1)[:, -1]
    for x in (10.0, 20.0, 30.0):
        bound = maximal_bernstein_tail(N, 1.0, 1.0, x)
        empirical = float((running_max >= x).mean())
        result.add(f"max_bernstein_x{x:.0f}", empirical, bound + _binomial_margin(bound, paths, sigma))

    d, T, delta = 5, 2000, 0.1
    trials = max(100, samples // 10)
    floor = projection_floors(T, 0, d, delta, FloorMode.UNWEIGHTED)
    violated = 0
    chunk = 500
    for start in range(0, trials, chunk):
        rows = min(chunk, trials - start)
        sums = generator.beta(0.5, (d - 1) / 2.0, size=(rows, T)).sum(axis=1)
        violated += int((sums < floor).sum())
    result.add("unweighted_floor_d5", violated / trials, delta + _binomial_margin(delta, trials, sigma))
    return result


def recursion_battery(seed: int, instances: int = 10_000) -> BatteryResult:
    """The perturbed recursion cap against brute-force recursions; zero violations allowed."""
    result = BatteryResult(name="recursion", seed=seed, samples=instances)
    generator = SeedStream(seed, 1).generator
    violations = 0
    worst = -math.inf
    for _ in range(instances):
        length = int(generator.integers(1, 21))
        h0 = float(generator.uniform(0.0, 5.0))
        a = generator.uniform(0.0, 2.0, size=length)
        eps = generator.uniform(0.0, 1.0, size=length) * (generator.random(length) < 0.7)
        h_T, a_used = simulate_perturbed_recursion(h0, a, eps)
        cap = perturbed_recursion_cap(h0, a_used, eps)
        worst = max(worst, h_T - cap)
        if h_T > cap * (1.0 + 1e-12) + 1e-12:
            violations += 1
    result.add("recursion_violations", violations, 0, detail=f"max(h_T - cap) = {worst:.3e}")
    return result


def rho_battery(seed: int, tuples: int = 50) -> BatteryResult:
    """Σρ_k and Σρ_k² against their closed-form caps on random parameter tuples."""
    result = BatteryResult(name="rho", seed=seed, samples=tuples)
    generator = SeedStream(seed, 2).generator
    sum_violations = square_violations = cap_region_violations = 0
    for _ in range(tuples):
        T = int(generator.integers(1, 20_001))
        d = int(generator.integers(1, 101))
        L = float(generator.uniform(0.1, 10.0))
        mu = L * float(generator.uniform(1e-3, 1.0))
        delta2 = float(generator.uniform(1e-4, 0.5))
        rho = rho_weights(T, d, mu, L, delta2)
        cap_sum, cap_sq = rho_sum_caps(T, d, mu, L, delta2)
        sum_violations += int(rho.sum() > cap_sum * (1.0 + 1e-9))
        square_violations += int(float(rho @ rho) > cap_sq * (1.0 + 1e-9))
        tail = rho[max(0, T - 501):]
        cap_region_violations += int((tail != 1.0).any())
    result.add("rho_sum_cap_violations", sum_violations, 0)
    result.add("rho_square_cap_violations", square_violations, 0)
    result.add("rho_cap_region_violations", cap_region_violations, 0)
    return result


def events_battery(
    seed: int,
    trials: int = 1000,
    dims: Sequence[int] = (2, 10),
    T: int = 200,
    delta: float = 0.1,
    alpha: float = 1e-3,
    sigma: Optional[float] = None,
) -> BatteryResult:
    """Empirical event failure rates on the isotropic quadratic against their δ shares."""
    sigma = settings.sigma_margin if sigma is None else sigma
    result = BatteryResult(name="events", seed=seed, samples=trials)
    for d in dims:
        problem = build_problem("quadratic", {"d": d})
        inputs = BoundInputs(
            d=d, L=problem.smoothness_L, alpha=alpha, T=T, delta=delta,
            Delta0=problem.initial_gap, mu=problem.strong_convexity_mu,
        )
        shares = event_shares(delta, strongly_convex=True)
        failures: Dict[str, int] = {name: 0 for name in shares}
        for trial in range(trials):
            params = RunParams(
                T=T, alpha=alpha, delta=delta, epsilon=1.0, L_used=problem.smoothness_L,
                stream=SeedStream(seed, trial),
            )
            report = check_events(run_trajectory(problem, params), inputs)
            for name, failed in report.failed_events().items():
                failures[name] += int(failed)
        for name, share in shares.items():
            result.add(f"{name}_d{d}", failures[name] / trials, share + _binomial_margin(share, trials, sigma))
    return result


BATTERIES: Dict[str, Callable[..., BatteryResult]] = {
    "distributional": lambda seed, samples: distributional_battery(seed, samples),
    "concentration": lambda seed, samples: concentration_battery(seed, samples),
    "recursion": lambda seed, samples: recursion_battery(seed, min(samples, 10_000)),
    "rho": lambda seed, samples: rho_battery(seed),
    "events": lambda seed, samples: events_battery(seed, trials=min(1000, max(50, samples // 100))),
}


def run_batteries(names: Sequence[str], seed: int, samples: int) -> List[BatteryResult]:
    results = []
    for index, name in enumerate(names, start=1):
        logger.info(f"[STEP {index}/{len(names)}] Running {name} battery (seed={seed}, samples={samples})...")
        battery = BATTERIES[name](seed, samples)
        status = "PASS" if battery.passed else "FAIL"
        logger.info(f"{name}: {status} ({sum(c.passed for c in battery.checks)}/{len(battery.checks)} checks)")
        results.append(battery)
    return results
