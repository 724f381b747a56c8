"""
Instrumented test-function suite.

Every member declares analytic L, μ, f*, and where possible the level-set
radius, so each regime has at least one problem whose constants are exact.
Problems are built by name from a parameter map so that worker processes
can rebuild them from plain data.
"""

import logging
import math
from dataclasses import replace
from typing import Any, Callable, Dict, Optional

import numpy as np
from scipy.optimize import brentq
from scipy.special import logsumexp, softmax

from ...errors import InvalidDimensionError, InvalidInputError
from .problems import ProblemSpec, Regime

logger = logging.getLogger(__name__)


def _dimension(params: Dict[str, Any], default: int) -> int:
    d = params.get("d", default)
    if isinstance(d, bool) or not isinstance(d, (int, np.integer)) or d < 1:
        raise InvalidDimensionError(f"Problem dimension must be a positive integer, got {d!r}")
    return int(d)


def _starting_point(
    params: Dict[str, Any], d: int, objective: Callable, f_star: Optional[float], homogeneous: bool = False
) -> np.ndarray:
    """Explicit `x0`, else ones rescaled so that f(x0) − f* equals `delta0` (homogeneous quadratics only)."""
    if "x0" in params:
        x0 = np.asarray(params["x0"], dtype=float)
        if x0.shape != (d,):
            raise InvalidDimensionError(f"x0 has {x0.size} coordinates, expected {d}")
        return x0
    base = np.ones(d)
    if "delta0" in params:
        if not homogeneous or f_star is None:
            raise InvalidInputError("delta0 rescaling is only available for the quadratic members")
        delta0 = float(params["delta0"])
        if delta0 < 0:
            raise InvalidInputError(f"delta0 must be non-negative, got {delta0}")
        gap = objective(base) - f_star
        if gap <= 0:
            raise InvalidInputError("Cannot rescale the default start: it is already optimal")
        return base * math.sqrt(delta0 / gap)
    return base * float(params.get("x0_scale", 1.0))


def _diagonal_quadratic(name: str, eigenvalues: np.ndarray, regime: Regime, params: Dict[str, Any]) -> ProblemSpec:
    """½ xᵀ diag(λ) x with f* = 0 and X* = null space of diag(λ)."""
    eigenvalues = np.asarray(eigenvalues, dtype=float)
    if (eigenvalues < 0).any():
        raise InvalidInputError(f"Quadratic eigenvalues must be non-negative: {eigenvalues.tolist()}")
    positive = eigenvalues > 0
    if not positive.any():
        raise InvalidInputError("Quadratic needs at least one positive eigenvalue")
    d = eigenvalues.size
    L = float(eigenvalues.max())
    lambda_min_positive = float(eigenvalues[positive].min())
    mu = float(eigenvalues.min())

    def objective(x):
        return 0.5 * float(x @ (eigenvalues * x))

    def gradient(x):
        return eigenvalues * x

    def radius(height):
        return math.sqrt(2.0 * height / lambda_min_positive)

    def distance(x):
        return float(np.linalg.norm(x[positive]))

    x0 = _starting_point(params, d, objective, 0.0, homogeneous=True)
    return ProblemSpec(
        name=name,
        d=d,
        smoothness_L=L,
        strong_convexity_mu=mu if regime is Regime.STRONGLY_CONVEX else 0.0,
        regime=regime,
        objective=objective,
        gradient=gradient,
        x0=x0,
        f_star=0.0,
        x_star=np.zeros(d),
        radius_fn=radius,
        distance_fn=distance,
        params=dict(params),
    )


def isotropic_quadratic(params: Dict[str, Any]) -> ProblemSpec:
    """½ c ‖x‖² with L = μ = c (c = `curvature`, default 1)."""
    d = _dimension(params, 10)
    curvature = float(params.get("curvature", 1.0))
    if not curvature > 0:
        raise InvalidInputError(f"curvature must be positive, got {curvature}")
    return _diagonal_quadratic("quadratic", np.full(d, curvature), Regime.STRONGLY_CONVEX, params)


def quad1d(params: Dict[str, Any]) -> ProblemSpec:
    """The one-dimensional ½ x² started at x0 = 1."""
    merged = {"d": 1, "curvature": 1.0, "x0": [1.0]}
    merged.update(params)
    return replace(isotropic_quadratic(merged), name="quad1d")


def anisotropic_quadratic(params: Dict[str, Any]) -> ProblemSpec:
    """½ xᵀ diag(λ) x with λ spread linearly over [μ, L]."""
    d = _dimension(params, 10)
    L = float(params.get("L", 1.0))
    mu = float(params.get("mu", 0.1))
    if not 0 < mu <= L:
        raise InvalidInputError(f"anisotropic_quadratic needs 0 < mu <= L (mu={mu}, L={L})")
    eigenvalues = np.full(1, L) if d == 1 else np.linspace(mu, L, d)
    merged = {"delta0": 1.0}
    merged.update(params)
    return _diagonal_quadratic("anisotropic_quadratic", eigenvalues, Regime.STRONGLY_CONVEX, merged)


def singular_quadratic(params: Dict[str, Any]) -> ProblemSpec:
    """½ xᵀ P x with P ⪰ 0 singular: convex, not strongly convex."""
    if "eigenvalues" in params:
        eigenvalues = np.asarray(params["eigenvalues"], dtype=float)
    else:
        d = _dimension(params, 2)
        null_dims = int(params.get("null_dims", 1))
        if not 1 <= null_dims < d:
            raise InvalidInputError(f"null_dims must be in [1, d), got {null_dims} with d={d}")
        L = float(params.get("L", 1.0))
        lambda_min = float(params.get("lambda_min", L))
        positive_count = d - null_dims
        spread = np.full(1, L) if positive_count == 1 else np.linspace(lambda_min, L, positive_count)
        eigenvalues = np.concatenate([np.zeros(null_dims), spread])
    if not (eigenvalues == 0).any():
        raise InvalidInputError("singular_quadratic needs at least one zero eigenvalue")
    return _diagonal_quadratic("singular_quadratic", eigenvalues, Regime.CONVEX, params)


def log_sum_exp(params: Dict[str, Any]) -> ProblemSpec:
    """log Σ exp(a_iᵀx + b_i) with the conservative L = σ_max(A)².

    The default family A = s·[I; −I], b = 0 has minimizer 0 and f* = log(2d).
    A user-supplied (A, b) leaves f* and the radius unknown.
    """
    if "A" in params:
        A = np.asarray(params["A"], dtype=float)
        if A.ndim != 2:
            raise InvalidDimensionError(f"A must be a matrix, got shape {A.shape}")
        d = _dimension(params, A.shape[1])
        if A.shape[1] != d:
            raise InvalidDimensionError(f"A must have shape (m, {d}), got {A.shape}")
        b = np.asarray(params.get("b", np.zeros(A.shape[0])), dtype=float)
        f_star: Optional[float] = None
        x_star: Optional[np.ndarray] = None
        distance = None
    else:
        d = _dimension(params, 10)
        scale = float(params.get("scale", 1.0))
        if not scale > 0:
            raise InvalidInputError(f"scale must be positive, got {scale}")
        A = scale * np.vstack([np.eye(d), -np.eye(d)])
        b = np.zeros(2 * d)
        f_star = math.log(2 * d)
        x_star = np.zeros(d)

        def distance(x):
            return float(np.linalg.norm(x))

    if b.shape != (A.shape[0],):
        raise InvalidDimensionError(f"b must have {A.shape[0]} entries, got {b.shape}")
    L = float(np.linalg.norm(A, 2) ** 2)

    def objective(x):
        return float(logsumexp(A @ x + b))

    def gradient(x):
        return A.T @ softmax(A @ x + b)

    x0 = _starting_point(params, d, objective, f_star)
    return ProblemSpec(
        name="logsumexp",
        d=d,
        smoothness_L=L,
        strong_convexity_mu=0.0,
        regime=Regime.CONVEX,
        objective=objective,
        gradient=gradient,
        x0=x0,
        f_star=f_star,
        x_star=x_star,
        radius_fn=None,
        distance_fn=distance,
        params=dict(params),
    )


def _cosine_infimum(amplitude: float) -> float:
    """min_t ½t² + a·cos t, per coordinate."""
    if amplitude <= 1.0:
        return amplitude
    # the nonzero stationary point solves t = a·sin t and lies in (0, π) for a ≤ 2
    root = brentq(lambda t: t - amplitude * math.sin(t), 1e-8, math.pi, xtol=1e-15, rtol=4 * np.finfo(float).eps)
    return 0.5 * root * root + amplitude * math.cos(root)


def cosine_regularized(params: Dict[str, Any]) -> ProblemSpec:
    """½‖x‖² + a·Σ cos(x_i); L = 1 + a, lower bounded, nonconvex for a > 1."""
    d = _dimension(params, 10)
    amplitude = float(params.get("amplitude", 1.0))
    if not 0 <= amplitude <= 2:
        raise InvalidInputError(f"amplitude must lie in [0, 2], got {amplitude}")
    f_star = d * _cosine_infimum(amplitude)

    def objective(x):
        return 0.5 * float(x @ x) + amplitude * float(np.cos(x).sum())

    def gradient(x):
        return x - amplitude * np.sin(x)

    x0 = _starting_point(params, d, objective, f_star)
    return ProblemSpec(
        name="cosine",
        d=d,
        smoothness_L=1.0 + amplitude,
        strong_convexity_mu=0.0,
        regime=Regime.NONCONVEX,
        objective=objective,
        gradient=gradient,
        x0=x0,
        f_star=f_star,
        params=dict(params),
    )


PROBLEM_REGISTRY: Dict[str, Callable[[Dict[str, Any]], ProblemSpec]] = {
    "quadratic": isotropic_quadratic,
    "quad1d": quad1d,
    "anisotropic_quadratic": anisotropic_quadratic,
    "singular_quadratic": singular_quadratic,
    "logsumexp": log_sum_exp,
    "cosine": cosine_regularized,
}


def build_problem(name: str, params: Optional[Dict[str, Any]] = None) -> ProblemSpec:
    """Builds a suite member from its registry name and parameter map."""
    try:
        builder = PROBLEM_REGISTRY[name]
    except KeyError:
        raise InvalidInputError(f"Unknown problem '{name}'; available: {sorted(PROBLEM_REGISTRY)}") from None
    problem = builder(dict(params or {}))
    logger.debug(f"Built problem {problem.name} (d={problem.d}, L={problem.smoothness_L}, regime={problem.regime.value})")
    return problem


def list_problems() -> Dict[str, str]:
    return {name: (builder.__doc__ or "").strip().splitlines()[0] for name, builder in PROBLEM_REGISTRY.items()}
