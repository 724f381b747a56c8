"""
Comparison table: expectation rows, their Markov conversions, and the
high-probability method, per regime, with every entry at constant 1.
"""

import logging
from typing import List, Optional

from pydantic import BaseModel

from ..oracles import Regime
from .schedules import ORDER_LEVEL, cvx_schedule, expectation_baseline, leading_order, markov_baseline, nc_schedule, sc_schedule

logger = logging.getLogger(__name__)

FUNCTION_PROPERTY = {
    Regime.STRONGLY_CONVEX: "Smooth + SC",
    Regime.CONVEX: "Smooth + convex",
    Regime.NONCONVEX: "Smooth",
}


class ComparisonRow(BaseModel):
    reference: str
    regime: Regime
    function_property: str
    convergence_type: str
    query_complexity: float
    queries_per_iteration: int = 2
    alpha: float
    alpha_ratio_to_ours: float
    complexity_ratio_to_ours: float
    scheduled_T: Optional[int] = None
    scheduled_alpha: Optional[float] = None
    label: str = ORDER_LEVEL


def _regime_rows(regime: Regime, d, L, mu, scale, epsilon, delta, scheduled) -> List[ComparisonRow]:
    ours = leading_order(regime, d, L, mu, scale, epsilon, delta)
    expectation = expectation_baseline(regime, d, L, mu, scale, epsilon)
    markov = markov_baseline(regime, d, L, mu, scale, epsilon, delta)
    prop = FUNCTION_PROPERTY[regime]

    def row(reference, convergence_type, entry, **extra):
        return ComparisonRow(
            reference=reference,
            regime=regime,
            function_property=prop,
            convergence_type=convergence_type,
            query_complexity=entry.N,
            alpha=entry.alpha,
            alpha_ratio_to_ours=entry.alpha / ours.alpha,
            complexity_ratio_to_ours=entry.N / ours.N,
            **extra,
        )

    return [
        row("expectation analysis", "expectation", expectation),
        row("Markov conversion", "high probability", markov),
        row(
            "high-probability normalized ZO-GD",
            "high probability",
            ours,
            scheduled_T=scheduled.T if scheduled is not None else None,
            scheduled_alpha=scheduled.alpha if scheduled is not None else None,
        ),
    ]


def comparison_table(
    d: int,
    L: float,
    mu: float,
    R: float,
    Delta0: float,
    epsilon: float,
    delta: float,
    include_schedules: bool = True,
) -> List[ComparisonRow]:
    """Nine rows (three per regime), in strongly convex, convex, nonconvex order."""
    logger.info(f"Building comparison table (d={d}, L={L}, mu={mu}, R={R}, Delta0={Delta0}, eps={epsilon}, delta={delta})")
    schedules = {
        Regime.STRONGLY_CONVEX: sc_schedule(d, L, mu, Delta0, epsilon, delta) if include_schedules else None,
        Regime.CONVEX: cvx_schedule(d, L, R, epsilon, delta) if include_schedules else None,
        Regime.NONCONVEX: nc_schedule(d, L, Delta0, epsilon, delta) if include_schedules else None,
    }
    rows: List[ComparisonRow] = []
    rows += _regime_rows(Regime.STRONGLY_CONVEX, d, L, mu, Delta0, epsilon, delta, schedules[Regime.STRONGLY_CONVEX])
    rows += _regime_rows(Regime.CONVEX, d, L, mu, R, epsilon, delta, schedules[Regime.CONVEX])
    rows += _regime_rows(Regime.NONCONVEX, d, L, mu, Delta0, epsilon, delta, schedules[Regime.NONCONVEX])
    return rows
