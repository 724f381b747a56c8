"""
hpzo Harness - Monte Carlo experiments, summaries and lemma-check batteries.
"""

from .config import ExperimentConfig, OutputConfig, OverridesConfig, ProblemConfig, load_experiment_config
from .lemma_checks import BATTERIES, BatteryResult, CheckResult, run_batteries
from .monte_carlo import resolve_schedule, run_monte_carlo, theory_bound
from .summary import McSummary, TrialSummary
from ..utils.export_reports import emit_comparison, emit_report, load_summary

__all__ = [
    "BATTERIES",
    "BatteryResult",
    "CheckResult",
    "ExperimentConfig",
    "McSummary",
    "OutputConfig",
    "OverridesConfig",
    "ProblemConfig",
    "TrialSummary",
    "emit_comparison",
    "emit_report",
    "load_experiment_config",
    "load_summary",
    "resolve_schedule",
    "run_batteries",
    "run_monte_carlo",
    "theory_bound",
]
