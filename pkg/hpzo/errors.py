"""
hpzo Errors
Exception hierarchy shared by the numerical core, the harness and the CLI.
"""

from typing import Optional

import numpy as np


class HpzoError(Exception):
    """Base class for every error raised by hpzo."""


class InvalidDimensionError(HpzoError, ValueError):
    """Raised when a dimension argument is not a positive integer."""


class InvalidInputError(HpzoError, ValueError):
    """Raised when an argument is outside its admissible range."""


class HorizonTooShortError(InvalidInputError):
    """Raised when T does not exceed 12·log(2/δ) in the convex bound."""


class OracleOverflowError(HpzoError):
    """Raised when the objective returns a non-finite value."""

    def __init__(self, x: np.ndarray, value: Optional[float] = None):
        self.x = np.array(x, dtype=float, copy=True)
        self.value = value
        super().__init__(f"Objective returned non-finite value {value!r} at x={self.x.tolist()}")


class HarnessError(HpzoError):
    """Raised when a Monte Carlo experiment cannot produce a trustworthy summary."""
