"""
DAMAS solver configuration and result models.
"""

from typing import Any, Literal

import numpy as np
from pydantic import Field, model_validator

from easydamas.models.base import BaseModel

SweepMode = Literal["forward", "alternating"]


class SolveConfig(BaseModel):
    """Gauss-Seidel run settings. ``initial_guess`` of None starts from x = 0."""

    iterations: int = Field(default=1000, ge=1)
    sweep_mode: SweepMode = "forward"
    initial_guess: np.ndarray | None = None


class SolveResult(BaseModel):
    """Nonnegative DAMAS solution with per-sweep residuals and timing."""

    x: np.ndarray
    residuals: list[float] = Field(default_factory=list)
    sweep_seconds: list[float] = Field(default_factory=list)
    iterations: int
    sweep_mode: SweepMode = "forward"

    @model_validator(mode="after")
    def _check_lengths(self) -> "SolveResult":
        if len(self.residuals) != self.iterations:
            raise ValueError("one residual per sweep is required")
        if np.any(self.x < 0):
            raise ValueError("solution must be nonnegative")
        return self

    @property
    def size(self) -> int:
        return int(self.x.shape[0])

    @property
    def total_seconds(self) -> float:
        return float(sum(self.sweep_seconds))

    @property
    def seconds_per_iteration(self) -> float:
        return self.total_seconds / self.iterations

    @property
    def final_residual(self) -> float:
        return self.residuals[-1]

    def metadata(self) -> dict[str, Any]:
        return {
            "size": self.size,
            "iterations": self.iterations,
            "sweep_mode": self.sweep_mode,
            "total_seconds": self.total_seconds,
            "seconds_per_iteration": self.seconds_per_iteration,
            "final_residual": self.final_residual,
        }


class RestrictedSystem(BaseModel):
    """Sub-system A[keep, keep] x = b[keep] with the map back to full-grid indices."""

    matrix: np.ndarray
    rhs: np.ndarray
    keep: np.ndarray = Field(..., description="Full-grid indices, strictly increasing")
    full_size: int

    @property
    def size(self) -> int:
        return int(self.keep.shape[0])
