"""
Concentration inequalities as executable formulas.

Chi-square and weighted chi-square caps, Freedman's inequality (tail and
linear forms), the maximal Bernstein tail, Ville's bound, Beta moments, the
perturbed convex-rate recursion, and the lower floors for sums of Beta
projections.
"""

import logging
import math
from enum import Enum
from typing import Optional, Sequence, Tuple

import numpy as np

from ...errors import InvalidInputError

logger = logging.getLogger(__name__)


def _log_inv(delta: float) -> float:
    if not 0 < delta < 1:
        raise InvalidInputError(f"Confidence delta must lie in (0, 1), got {delta}")
    return math.log(1.0 / delta)


def _loglog(x: float) -> float:
    return math.log(math.log(x))


# --- Chi-square ---
def chi_square_caps(k_dof: float, tau: float) -> Tuple[float, float]:
    """Upper k + 2√(kτ) + 2τ and lower k − 2√(kτ), each failing with probability ≤ e^{−τ}."""
    if not k_dof > 0:
        raise InvalidInputError(f"Degrees of freedom must be positive, got {k_dof}")
    if tau < 0:
        raise InvalidInputError(f"tau must be non-negative, got {tau}")
    root = 2.0 * math.sqrt(k_dof * tau)
    return k_dof + root + 2.0 * tau, k_dof - root


def weighted_chi_square_cap(weights: Sequence[float], delta: float) -> float:
    """Σw + 2√(Σw²·log(1/δ)) + 2·max(w)·log(1/δ) for Σ w_i·χ²₁ variables."""
    w = np.asarray(weights, dtype=float)
    if (w < 0).any():
        raise InvalidInputError("Chi-square weights must be non-negative")
    ell = _log_inv(delta)
    if w.size == 0:
        return 0.0
    return float(w.sum() + 2.0 * math.sqrt(float(w @ w) * ell) + 2.0 * w.max() * ell)


# --- Freedman ---
def freedman_caps(W: float, R: float, lam: float, delta: float) -> float:
    """Linear form λW/(2(1 − λR/3)) + log(1/δ)/λ, valid for 0 < λ < 3/R."""
    if not R > 0:
        raise InvalidInputError(f"Increment bound R must be positive, got {R}")
    if not 0 < lam < 3.0 / R:
        raise InvalidInputError(f"lambda must lie in (0, 3/R) = (0, {3.0 / R}), got {lam}")
    if W < 0:
        raise InvalidInputError(f"Variance proxy W must be non-negative, got {W}")
    return lam * W / (2.0 * (1.0 - lam * R / 3.0)) + _log_inv(delta) / lam


def freedman_tail(tau: float, sigma2: float, R: float) -> float:
    """exp(−τ²/(2(σ² + Rτ)))."""
    if tau < 0 or sigma2 < 0 or R < 0:
        raise InvalidInputError("freedman_tail needs tau, sigma2, R >= 0")
    if tau == 0:
        return 1.0
    return math.exp(-tau * tau / (2.0 * (sigma2 + R * tau)))


def maximal_bernstein_tail(N: int, v2: float, b: float, x: float) -> float:
    """exp(−x²/(2(N·v² + b·x))) for the running maximum of a Bernstein martingale."""
    if not v2 > 0 or not b > 0:
        raise InvalidInputError(f"v2 and b must be positive, got v2={v2}, b={b}")
    if x < 0:
        raise InvalidInputError(f"x must be non-negative, got {x}")
    if x == 0:
        return 1.0
    return math.exp(-x * x / (2.0 * (N * v2 + b * x)))


def ville_bound(expected_initial: float, y: float) -> float:
    """P(sup_t Z_t ≥ y) ≤ E[Z₀]/y for a nonnegative supermartingale."""
    if not y > 0:
        raise InvalidInputError(f"Threshold y must be positive, got {y}")
    if expected_initial < 0:
        raise InvalidInputError("Nonnegative supermartingales have E[Z0] >= 0")
    return min(1.0, expected_initial / y)


# --- Beta moments ---
def beta_raw_moment(a: float, b: float, m: int) -> float:
    """E[X^m] = Π_{k<m} (a+k)/(a+b+k) for X ~ Beta(a, b)."""
    if not a > 0 or not b > 0:
        raise InvalidInputError(f"Beta parameters must be positive, got a={a}, b={b}")
    if isinstance(m, bool) or not isinstance(m, (int, np.integer)) or m < 1:
        raise InvalidInputError(f"Moment order must be a positive integer, got {m!r}")
    moment = 1.0
    for k in range(int(m)):
        moment *= (a + k) / (a + b + k)
    return moment


def beta_mean_variance(a: float, b: float) -> Tuple[float, float]:
    total = a + b
    return a / total, a * b / (total * total * (total + 1.0))


# --- Perturbed recursion ---
def perturbed_recursion_cap(h0: float, a_seq: Sequence[float], eps_seq: Sequence[float]) -> float:
    """2E + (1/(h0+E) + Σa/4)^{-1} with E = Σε; the inverse term is 0 when h0 + E = 0."""
    a = np.asarray(a_seq, dtype=float)
    eps = np.asarray(eps_seq, dtype=float)
    if h0 < 0 or (a < 0).any() or (eps < 0).any():
        raise InvalidInputError("perturbed_recursion_cap needs non-negative inputs")
    E = float(eps.sum())
    if h0 + E == 0:
        return 2.0 * E
    return 2.0 * E + 1.0 / (1.0 / (h0 + E) + float(a.sum()) / 4.0)


def simulate_perturbed_recursion(h0: float, a_seq: Sequence[float], eps_seq: Sequence[float]) -> Tuple[float, np.ndarray]:
    """Iterates h_{t+1} = h_t − a_t·h_t² + ε_t with equality.

    When the right-hand side would go negative no nonnegative sequence
    exists, so a_t is lowered to the largest feasible value (the step lands
    on 0). Returns h_T and the a sequence actually used.
    """
    a_used = np.array(a_seq, dtype=float, copy=True)
    eps = np.asarray(eps_seq, dtype=float)
    if a_used.shape != eps.shape:
        raise InvalidInputError(f"a_seq and eps_seq lengths differ: {a_used.shape} vs {eps.shape}")
    h = float(h0)
    for t in range(a_used.size):
        h_next = h - a_used[t] * h * h + eps[t]
        if h_next < 0:
            a_used[t] = (h + eps[t]) / (h * h)
            h_next = 0.0
        h = h_next
    return h, a_used


# --- Beta projection floors ---
class FloorMode(str, Enum):
    UNWEIGHTED = "unweighted"
    FREEDMAN = "freedman"
    SUFFIX = "suffix"
    RHO2 = "rho2"
    WEIGHTED = "weighted"


def projection_floors(
    T: int,
    k: int,
    d: int,
    delta: float,
    mode,
    sum_w: Optional[float] = None,
    B: Optional[float] = None,
) -> float:
    """High-probability lower floor for a sum of Beta(1/2,(d−1)/2) projections.

    unweighted  T/(2d) − 6·log(1/δ)/d
    freedman    T/d − (2√(2T·log(1/δ)) + 2·log(1/δ))/d
    suffix      (T−k−1)/(2d) − 250(1 + log(1/δ) + loglog(2(T−k)))/d
    rho2        (T−k−501)/(2d) − (250/d)(log(1/δ) + loglog(2(T−k)))
    weighted    Σw/(2d) − 4B·log(1/δ)/d
    """
    mode = FloorMode(mode)
    if d < 1:
        raise InvalidInputError(f"Dimension must be positive, got {d}")
    ell = _log_inv(delta)
    if mode is FloorMode.UNWEIGHTED:
        return T / (2.0 * d) - 6.0 * ell / d
    if mode is FloorMode.FREEDMAN:
        return T / d - (2.0 * math.sqrt(2.0 * T * ell) + 2.0 * ell) / d
    if mode in (FloorMode.SUFFIX, FloorMode.RHO2):
        if not 0 <= k < T:
            raise InvalidInputError(f"Suffix floors need 0 <= k < T, got k={k}, T={T}")
        m = T - k
        if mode is FloorMode.SUFFIX:
            return (m - 1) / (2.0 * d) - 250.0 * (1.0 + ell + _loglog(2.0 * m)) / d
        return (m - 501) / (2.0 * d) - 250.0 / d * (ell + _loglog(2.0 * m))
    if sum_w is None or B is None:
        raise InvalidInputError("Weighted floor needs sum_w and B")
    return sum_w / (2.0 * d) - 4.0 * B * ell / d
