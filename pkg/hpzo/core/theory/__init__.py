"""
hpzo Theory - theorem bounds, concentration formulas and trajectory event checks.
"""

from .bounds import (
    BoundInputs,
    cvx_bound,
    gradient_ceiling,
    nc_bound,
    nc_min_bound,
    rho_sum_caps,
    rho_weights,
    sc_alpha_event_cap,
    sc_bound,
    sc_decay_term,
)
from .concentration import (
    FloorMode,
    beta_mean_variance,
    beta_raw_moment,
    chi_square_caps,
    freedman_caps,
    freedman_tail,
    maximal_bernstein_tail,
    perturbed_recursion_cap,
    projection_floors,
    simulate_perturbed_recursion,
    ville_bound,
    weighted_chi_square_cap,
)
from .events import EventReport, PathwiseReport, check_events, event_shares, pathwise_checks

__all__ = [
    "BoundInputs",
    "EventReport",
    "FloorMode",
    "PathwiseReport",
    "beta_mean_variance",
    "beta_raw_moment",
    "check_events",
    "chi_square_caps",
    "cvx_bound",
    "event_shares",
    "freedman_caps",
    "freedman_tail",
    "gradient_ceiling",
    "maximal_bernstein_tail",
    "nc_bound",
    "nc_min_bound",
    "pathwise_checks",
    "perturbed_recursion_cap",
    "projection_floors",
    "rho_sum_caps",
    "rho_weights",
    "sc_alpha_event_cap",
    "sc_bound",
    "sc_decay_term",
    "simulate_perturbed_recursion",
    "ville_bound",
    "weighted_chi_square_cap",
]
