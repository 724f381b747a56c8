"""
hpzo Schedules - admissible (T, α) per regime, accumulation scales and baseline comparisons.
"""

from .comparison import ComparisonRow, comparison_table
from .schedules import (
    AccumulationScale,
    MarkovBaseline,
    ScheduleReport,
    accumulation_scale,
    cvx_schedule,
    expectation_baseline,
    leading_order,
    loglog,
    markov_baseline,
    nc_schedule,
    sc_horizon,
    sc_schedule,
    sc_smoothing_factor,
)

__all__ = [
    "AccumulationScale",
    "ComparisonRow",
    "MarkovBaseline",
    "ScheduleReport",
    "accumulation_scale",
    "comparison_table",
    "cvx_schedule",
    "expectation_baseline",
    "leading_order",
    "loglog",
    "markov_baseline",
    "nc_schedule",
    "sc_horizon",
    "sc_schedule",
    "sc_smoothing_factor",
]
