"""
Zeroth-order gradient descent with the two-point Gaussian estimator.

Each iteration draws u ~ N(0, I_d), queries f at x ± αu, and moves along
g = ((f(x+αu) − f(x−αu))/(2α))·u with the normalized stepsize
η = 1/(4·L·‖u‖²). Every iteration is instrumented (f, ‖∇f‖², ζ, ‖u‖², β,
Δ_α, η) so the pathwise inequalities can be checked afterwards; the
instrumentation never touches the query ledger.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from ...config import settings
from ...errors import InvalidInputError, OracleOverflowError
from ..oracles import ProblemSpec, QueryLedger, evaluate, gradient_reference
from ..sampling import Direction, SeedStream, sample_direction, squared_normalized_projection

logger = logging.getLogger(__name__)

STEP_FIELDS = ("f_before", "grad_norm_sq", "zeta", "u_norm_sq", "beta", "delta_alpha", "eta")


@dataclass
class RunParams:
    """Everything one trajectory needs."""

    T: int
    alpha: float
    delta: float
    epsilon: float
    L_used: float
    stream: SeedStream
    x0: Optional[np.ndarray] = None

    def __post_init__(self):
        if isinstance(self.T, bool) or not isinstance(self.T, (int, np.integer)) or self.T < 1:
            raise InvalidInputError(f"Horizon T must be a positive integer, got {self.T!r}")
        if not self.alpha > 0:
            raise InvalidInputError(f"Smoothing radius alpha must be positive, got {self.alpha}")
        if not 0 < self.delta < 1:
            raise InvalidInputError(f"Confidence delta must lie in (0, 1), got {self.delta}")
        if not self.epsilon > 0:
            raise InvalidInputError(f"Target epsilon must be positive, got {self.epsilon}")
        if not self.L_used > 0:
            raise InvalidInputError(f"L_used must be positive, got {self.L_used}")
        self.T = int(self.T)


@dataclass(frozen=True)
class StepRecord:
    t: int
    f_before: float
    grad_norm_sq: float
    zeta: float
    u_norm_sq: float
    beta: float
    delta_alpha: float
    eta: float


@dataclass(frozen=True)
class TrajectoryRecord:
    """Columnar per-step diagnostics plus the final iterate.

    The arrays hold only completed iterations: an oracle overflow leaves a
    shorter record with `error` set.
    """

    problem_name: str
    T: int
    alpha: float
    L_used: float
    f_before: np.ndarray = field(repr=False)
    grad_norm_sq: np.ndarray = field(repr=False)
    zeta: np.ndarray = field(repr=False)
    u_norm_sq: np.ndarray = field(repr=False)
    beta: np.ndarray = field(repr=False)
    delta_alpha: np.ndarray = field(repr=False)
    eta: np.ndarray = field(repr=False)
    x_final: np.ndarray = field(repr=False)
    f_final: float
    queries: QueryLedger
    rejections: int = 0
    stream_index: int = 0
    error: Optional[str] = None

    def __post_init__(self):
        for name in STEP_FIELDS + ("x_final",):
            getattr(self, name).setflags(write=False)

    @property
    def completed_steps(self) -> int:
        return int(self.f_before.shape[0])

    @property
    def completed(self) -> bool:
        return self.error is None and self.completed_steps == self.T

    @property
    def steps(self) -> List[StepRecord]:
        return [
            StepRecord(t, *(float(getattr(self, name)[t]) for name in STEP_FIELDS))
            for t in range(self.completed_steps)
        ]

    @property
    def f_path(self) -> np.ndarray:
        """f(x_0), ..., f(x_T): the recorded values followed by the final one."""
        return np.append(self.f_before, self.f_final)

    @property
    def average_grad_norm_sq(self) -> float:
        return float(self.grad_norm_sq.mean()) if self.completed_steps else math.nan

    @property
    def min_grad_norm_sq(self) -> float:
        return float(self.grad_norm_sq.min()) if self.completed_steps else math.nan


def difference_quotient(problem: ProblemSpec, x: np.ndarray, u: Direction, alpha: float, ledger: QueryLedger) -> float:
    """(f(x+αu) − f(x−αu))/(2α), charging two queries."""
    if not alpha > 0:
        raise InvalidInputError(f"Smoothing radius alpha must be positive, got {alpha}")
    f_plus = evaluate(problem, x + alpha * u.u, ledger)
    f_minus = evaluate(problem, x - alpha * u.u, ledger)
    return (f_plus - f_minus) / (2.0 * alpha)


def two_point_gradient(problem: ProblemSpec, x, u: Direction, alpha: float, ledger: QueryLedger) -> np.ndarray:
    """The two-point estimator g(x) = ((f(x+αu) − f(x−αu))/(2α))·u."""
    x = np.asarray(x, dtype=float)
    return difference_quotient(problem, x, u, alpha, ledger) * u.u


def finite_difference_residual(problem: ProblemSpec, x, u: Direction, alpha: float) -> float:
    """β = difference quotient − u·∇f(x); diagnostic, uses a scratch ledger."""
    x = np.asarray(x, dtype=float)
    quotient = difference_quotient(problem, x, u, alpha, QueryLedger())
    return quotient - float(u.u @ gradient_reference(problem, x))


def step(x, g, u: Direction, L_used: float) -> np.ndarray:
    """x − g/(4·L·‖u‖²)."""
    if not u.norm_sq > 0:
        raise InvalidInputError("Direction must have a positive squared norm")
    x_next = np.asarray(x, dtype=float) - np.asarray(g, dtype=float) / (4.0 * L_used * u.norm_sq)
    if not np.isfinite(x_next).all():
        raise OracleOverflowError(x_next)
    return x_next


def run_trajectory(problem: ProblemSpec, params: RunParams) -> TrajectoryRecord:
    """Runs T iterations and records every per-step diagnostic."""
    d = problem.d
    T = params.T
    x0 = problem.x0 if params.x0 is None else params.x0
    x = np.array(x0, dtype=float, copy=True)
    if x.shape != (d,):
        raise InvalidInputError(f"x0 has shape {x.shape}, problem '{problem.name}' expects ({d},)")

    threshold = settings.zero_gradient_threshold
    degenerate = settings.degenerate_norm_sq
    L = params.L_used
    alpha = params.alpha
    stream = params.stream
    starting_rejections = stream.rejections
    ledger = QueryLedger()
    fallback_axis = np.zeros(d)
    fallback_axis[0] = 1.0

    columns = {name: np.empty(T) for name in STEP_FIELDS}
    completed = 0
    error = None

    try:
        for t in range(T):
            f_t = float(problem.objective(x))
            if not math.isfinite(f_t):
                raise OracleOverflowError(x, f_t)
            grad = gradient_reference(problem, x)
            w = float(grad @ grad)
            direction = sample_direction(stream, d, degenerate)

            grad_norm = math.sqrt(w)
            axis = grad / grad_norm if grad_norm >= threshold else fallback_axis
            zeta = squared_normalized_projection(direction, axis)

            quotient = difference_quotient(problem, x, direction, alpha, ledger)
            beta = quotient - float(direction.u @ grad)
            eta = 1.0 / (4.0 * L * direction.norm_sq)
            delta_alpha = eta * beta * beta / 2.0 + L * eta * eta * beta * beta * direction.norm_sq

            x = step(x, quotient * direction.u, direction, L)

            columns["f_before"][t] = f_t
            columns["grad_norm_sq"][t] = w
            columns["zeta"][t] = zeta
            columns["u_norm_sq"][t] = direction.norm_sq
            columns["beta"][t] = beta
            columns["delta_alpha"][t] = delta_alpha
            columns["eta"][t] = eta
            completed = t + 1
    except OracleOverflowError as e:
        error = str(e)
        logger.warning(f"Trajectory on '{problem.name}' (stream {stream.stream_index}) aborted at step {completed}: {error}")

    f_final = float(problem.objective(x)) if np.isfinite(x).all() else math.nan
    return TrajectoryRecord(
        problem_name=problem.name,
        T=T,
        alpha=alpha,
        L_used=L,
        **{name: columns[name][:completed].copy() for name in STEP_FIELDS},
        x_final=x,
        f_final=f_final,
        queries=ledger,
        rejections=stream.rejections - starting_rejections,
        stream_index=stream.stream_index,
        error=error,
    )
