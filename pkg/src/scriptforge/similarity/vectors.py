"""Embedding vectors and cosine similarity."""

from __future__ import annotations

import math
from dataclasses import dataclass

from scriptforge.errors import DimensionMismatch, ZeroVector


@dataclass(frozen=True)
class EmbeddingVector:
    """Fixed-length real vector; all values must be finite."""

    values: tuple[float, ...]

    def __post_init__(self) -> None:
        if not self.values:
            raise ValueError("embedding vector must be non-empty")
        if not all(math.isfinite(v) for v in self.values):
            raise ValueError("embedding vector contains non-finite values")

    @property
    def dim(self) -> int:
        return len(self.values)

    def norm(self) -> float:
        return math.sqrt(sum(v * v for v in self.values))


def cosine(u: EmbeddingVector, v: EmbeddingVector) -> float:
    """Cosine similarity, clamped to [-1, 1] against rounding.

    Identical value tuples score exactly 1.0 so that an input matched
    against itself ranks with a clean full score.
    """
    if u.dim != v.dim:
        raise DimensionMismatch(f"dimensions differ: {u.dim} != {v.dim}")
    nu, nv = u.norm(), v.norm()
    if nu == 0.0 or nv == 0.0:
        raise ZeroVector("cosine undefined for all-zero vector")
    if u.values == v.values:
        return 1.0
    dot = sum(x * y for x, y in zip(u.values, v.values))
    return max(-1.0, min(1.0, dot / (nu * nv)))
