"""
Aggregated Monte Carlo results.
"""

from typing import Dict, List, Optional

from pydantic import BaseModel, Field

from ..core.oracles import Regime
from ..core.schedules import ScheduleReport


class TrialSummary(BaseModel):
    trial_index: int
    final_quantity: Optional[float] = None
    final_gap: Optional[float] = None
    average_grad_norm_sq: Optional[float] = None
    min_grad_norm_sq: Optional[float] = None
    queries: int = 0
    rejections: int = 0
    failed_run: bool = False
    error: Optional[str] = None
    events: Dict[str, Optional[bool]] = Field(default_factory=dict)
    pathwise_violations: int = 0


class McSummary(BaseModel):
    problem: str
    regime: Regime
    certified_quantity: str
    epsilon: float
    delta: float
    trials: int
    master_seed: int
    T: int
    alpha: float
    schedule: Optional[ScheduleReport] = None
    overrides_applied: bool = False
    trial_results: List[TrialSummary] = Field(default_factory=list)
    quantiles: Dict[str, Optional[float]] = Field(default_factory=dict)
    failure_count: int = 0
    failure_rate: float = 0.0
    failure_ci: List[float] = Field(default_factory=lambda: [0.0, 1.0])
    failure_threshold: float = 0.0
    event_failure_rates: Dict[str, float] = Field(default_factory=dict)
    event_delta_shares: Dict[str, float] = Field(default_factory=dict)
    theory_bound: Optional[float] = None
    bound_label: str = "unavailable"
    dominated: Optional[bool] = None
    failed_runs: int = 0
    pathwise_violations: int = 0
    total_queries: int = 0
    wall_time_seconds: float = 0.0

    @property
    def final_quantities(self) -> List[Optional[float]]:
        return [trial.final_quantity for trial in self.trial_results]

    @property
    def assertion_passed(self) -> bool:
        """Domination holds and the failure rate stays within δ plus the binomial margin."""
        return self.dominated is True and self.failure_rate <= self.failure_threshold
