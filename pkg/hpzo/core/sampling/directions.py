"""
Seeded Gaussian direction sampling and the squared normalized projection.

Every draw is addressed by (master_seed, stream_index): the pair keys a
SeedSequence whose Philox bit generator is counter based, so trial streams
are independent and reproducible regardless of which worker runs them.
"""

import logging
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ...errors import InvalidDimensionError, InvalidInputError

logger = logging.getLogger(__name__)

DEGENERATE_NORM_SQ = 1e-300
UNIT_TOLERANCE = 1e-12


@dataclass
class SeedStream:
    """One independent stream of standard normal draws (one per Monte Carlo trial)."""

    master_seed: int
    stream_index: int
    rejections: int = 0
    _generator: Optional[np.random.Generator] = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.stream_index < 0:
            raise InvalidInputError(f"stream_index must be non-negative, got {self.stream_index}")
        # SeedSequence only accepts non-negative entropy; fold signed 64-bit seeds into range
        self.master_seed = int(self.master_seed) & 0xFFFF_FFFF_FFFF_FFFF

    @property
    def generator(self) -> np.random.Generator:
        if self._generator is None:
            sequence = np.random.SeedSequence(entropy=self.master_seed, spawn_key=(self.stream_index,))
            self._generator = np.random.Generator(np.random.Philox(sequence))
        return self._generator

    def fresh(self) -> "SeedStream":
        """A new stream positioned at the start of the same sequence."""
        return SeedStream(master_seed=self.master_seed, stream_index=self.stream_index)


@dataclass(frozen=True)
class Direction:
    """A Gaussian direction u together with its cached squared norm."""

    u: np.ndarray
    norm_sq: float

    @classmethod
    def from_vector(cls, u) -> "Direction":
        vector = np.asarray(u, dtype=float)
        norm_sq = float(vector @ vector)
        if not norm_sq > 0.0:
            raise InvalidInputError("Direction must have a positive squared norm")
        return cls(u=vector, norm_sq=norm_sq)

    @property
    def d(self) -> int:
        return int(self.u.shape[0])


def _check_dimension(d) -> int:
    if isinstance(d, bool) or not isinstance(d, (int, np.integer)) or d < 1:
        raise InvalidDimensionError(f"Dimension must be a positive integer, got {d!r}")
    return int(d)


def sample_direction(stream: SeedStream, d: int, degenerate_norm_sq: float = DEGENERATE_NORM_SQ) -> Direction:
    """Draws u ~ N(0, I_d), resampling the (probability-zero) degenerate draws."""
    d = _check_dimension(d)
    while True:
        u = stream.generator.standard_normal(d)
        norm_sq = float(u @ u)
        if norm_sq >= degenerate_norm_sq:
            return Direction(u=u, norm_sq=norm_sq)
        stream.rejections += 1
        logger.debug(f"Resampling degenerate direction (stream {stream.stream_index}, norm_sq={norm_sq})")


def sample_directions(stream: SeedStream, d: int, n: int, degenerate_norm_sq: float = DEGENERATE_NORM_SQ) -> np.ndarray:
    """Draws an (n, d) batch of directions; degenerate rows are redrawn in place."""
    d = _check_dimension(d)
    if n < 0:
        raise InvalidInputError(f"Sample count must be non-negative, got {n}")
    batch = stream.generator.standard_normal((n, d))
    degenerate = np.einsum("ij,ij->i", batch, batch) < degenerate_norm_sq
    while degenerate.any():
        count = int(degenerate.sum())
        stream.rejections += count
        batch[degenerate] = stream.generator.standard_normal((count, d))
        degenerate = np.einsum("ij,ij->i", batch, batch) < degenerate_norm_sq
    return batch


def _check_unit(a: np.ndarray) -> np.ndarray:
    a = np.asarray(a, dtype=float)
    norm = float(np.sqrt(a @ a))
    if not abs(norm - 1.0) <= UNIT_TOLERANCE:
        raise InvalidInputError(f"Projection axis must be a unit vector, got norm {norm!r}")
    return a


def squared_normalized_projection(u: Direction, a) -> float:
    """ζ = (u·a)²/‖u‖², exactly 1 in one dimension."""
    a = _check_unit(a)
    if a.shape != u.u.shape:
        raise InvalidInputError(f"Axis has shape {a.shape}, direction has shape {u.u.shape}")
    if u.d == 1:
        return 1.0
    inner = float(u.u @ a)
    return min(1.0, max(0.0, inner * inner / u.norm_sq))


def projection_batch(directions: np.ndarray, a) -> np.ndarray:
    """Vectorized ζ for every row of an (n, d) direction batch."""
    a = _check_unit(a)
    directions = np.asarray(directions, dtype=float)
    if directions.shape[1] == 1:
        return np.ones(directions.shape[0])
    inner = directions @ a
    norm_sq = np.einsum("ij,ij->i", directions, directions)
    return np.clip(inner * inner / norm_sq, 0.0, 1.0)
