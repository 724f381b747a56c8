"""
hpzo Sampling - seeded Gaussian directions and Beta projections.
"""

from .directions import (
    Direction,
    SeedStream,
    projection_batch,
    sample_direction,
    sample_directions,
    squared_normalized_projection,
)

__all__ = [
    "Direction",
    "SeedStream",
    "projection_batch",
    "sample_direction",
    "sample_directions",
    "squared_normalized_projection",
]
