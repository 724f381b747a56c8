"""
hpzo Optimizer - two-point Gaussian zeroth-order gradient descent with full instrumentation.
"""

from .zogd import (
    STEP_FIELDS,
    RunParams,
    StepRecord,
    TrajectoryRecord,
    difference_quotient,
    finite_difference_residual,
    run_trajectory,
    step,
    two_point_gradient,
)

__all__ = [
    "STEP_FIELDS",
    "RunParams",
    "StepRecord",
    "TrajectoryRecord",
    "difference_quotient",
    "finite_difference_residual",
    "run_trajectory",
    "step",
    "two_point_gradient",
]
