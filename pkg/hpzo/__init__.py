"""
hpzo - normalized two-point zeroth-order gradient descent with high-probability guarantees.

This package provides:
- Gaussian direction sampling and the test-function suite
- The two-query optimizer and its trajectory records
- (T, α) schedules for strongly convex, convex and nonconvex problems
- Closed-form guarantees and per-trajectory event checks
- A Monte Carlo harness with lemma-check batteries
- CLI tools and FastAPI integration
"""

__version__ = "1.0.0"

# Core functionality
from .core import guarantee_for, run_single_trajectory, schedule_for
from .core.optimizer import RunParams, TrajectoryRecord, run_trajectory
from .core.oracles import Regime, build_problem, list_problems
from .core.sampling import SeedStream, sample_direction
from .core.schedules import comparison_table, cvx_schedule, nc_schedule, sc_schedule

# Harness
from .harness import load_experiment_config, run_batteries, run_monte_carlo

# CLI tools
from .cli import main as cli_main

# API integration
from .api import create_app
from .api import router as api_router

# Errors
from .errors import HpzoError, InvalidDimensionError, InvalidInputError

__all__ = [
    # Core
    "guarantee_for",
    "run_single_trajectory",
    "schedule_for",
    "RunParams",
    "TrajectoryRecord",
    "run_trajectory",
    "Regime",
    "build_problem",
    "list_problems",
    "SeedStream",
    "sample_direction",
    "comparison_table",
    "cvx_schedule",
    "nc_schedule",
    "sc_schedule",
    # Harness
    "load_experiment_config",
    "run_batteries",
    "run_monte_carlo",
    # CLI
    "cli_main",
    # API
    "api_router",
    "create_app",
    # Errors
    "HpzoError",
    "InvalidDimensionError",
    "InvalidInputError",
]
