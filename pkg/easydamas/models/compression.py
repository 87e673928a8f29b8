"""
Wavelet grid models: nested dyadic grids and the compressed point set.
"""

import numpy as np
from pydantic import Field, model_validator

from easydamas.models.base import BaseModel


class NestedGrids(BaseModel):
    """
    Levels 0..J of per-axis index sets; level J is the full axis 0..N-1.

    ``axes[j]`` holds the full-grid indices present on level j, and level j
    is the even-position subsampling of level j + 1.
    """

    n_per_side: int = Field(..., ge=2)
    axes: list[np.ndarray]

    @property
    def max_level(self) -> int:
        """J = floor(log2 N)."""
        return len(self.axes) - 1

    def axis(self, level: int) -> np.ndarray:
        return self.axes[level]

    def axis_size(self, level: int) -> int:
        return int(self.axes[level].shape[0])

    def sizes(self) -> list[int]:
        """Per-axis point counts from the finest level down to level 0."""
        return [self.axis_size(j) for j in range(self.max_level, -1, -1)]

    def level_indices(self, level: int) -> np.ndarray:
        """Sorted flat indices of all points on a level."""
        ax = self.axes[level]
        return np.sort((ax[:, None] * self.n_per_side + ax[None, :]).ravel())


class CompressedGrid(BaseModel):
    """Retained grid points after wavelet thresholding."""

    kept: np.ndarray = Field(..., description="Strictly increasing full-grid indices")
    levels: np.ndarray = Field(..., description="Level at which each kept point first appears")
    epsilon: float
    mode: str = "relative"
    stencil: str = "linear"
    threshold: float = Field(default=0.0, description="Effective threshold epsilon_eff")
    full_size: int

    @model_validator(mode="after")
    def _check_kept(self) -> "CompressedGrid":
        kept = np.asarray(self.kept, dtype=np.int64)
        if kept.ndim != 1 or kept.size == 0:
            raise ValueError("kept must be a non-empty 1-D index array")
        if np.any(np.diff(kept) <= 0):
            raise ValueError("kept indices must be strictly increasing")
        if kept[0] < 0 or kept[-1] >= self.full_size:
            raise ValueError(f"kept indices must lie in [0, {self.full_size})")
        if np.asarray(self.levels).shape != kept.shape:
            raise ValueError("one level tag per kept index is required")
        object.__setattr__(self, "kept", kept)
        object.__setattr__(self, "levels", np.asarray(self.levels, dtype=np.int64))
        return self

    @property
    def size(self) -> int:
        return int(self.kept.shape[0])

    @property
    def sigma(self) -> float:
        """Compression ratio S / |kept|."""
        return self.full_size / self.size
