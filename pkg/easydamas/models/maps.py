"""
Beamforming models: steering vectors, scan-grid maps and the PSF system.
"""

import numpy as np
from pydantic import Field, model_validator

from easydamas.models.base import BaseModel
from easydamas.models.geometry import ScanGrid


class SteeringSet(BaseModel):
    """
    Steering vectors v and propagation vectors g for every grid point.

    Both are (S, M) complex arrays built from the same distances |r - r_m|.
    """

    v: np.ndarray = Field(..., description="(S, M) steering vectors")
    g: np.ndarray = Field(..., description="(S, M) propagation vectors")
    wavenumber: float = Field(..., ge=0, description="k = omega / c0 (rad/m)")
    grid: ScanGrid

    @model_validator(mode="after")
    def _check_shapes(self) -> "SteeringSet":
        if self.v.ndim != 2 or self.v.shape != self.g.shape:
            raise ValueError(
                f"v and g must share an (S, M) shape, got {self.v.shape}, {self.g.shape}"
            )
        if self.v.shape[0] != self.grid.size:
            raise ValueError(f"expected {self.grid.size} grid points, got {self.v.shape[0]}")
        return self

    @property
    def n_points(self) -> int:
        return int(self.v.shape[0])

    @property
    def n_mics(self) -> int:
        return int(self.v.shape[1])


class BeamMap(BaseModel):
    """Real-valued map on the scan grid: a beamformer output b or a source distribution x."""

    values: np.ndarray = Field(..., description="Length-S values (Pa^2)")
    grid: ScanGrid

    @model_validator(mode="after")
    def _check_values(self) -> "BeamMap":
        values = np.ascontiguousarray(self.values, dtype=np.float64)
        if values.ndim != 1 or values.shape[0] != self.grid.size:
            raise ValueError(f"map must have length {self.grid.size}, got shape {values.shape}")
        if not np.all(np.isfinite(values)):
            raise ValueError("map values must be finite")
        if values is not self.values:
            object.__setattr__(self, "values", values)
        return self

    @property
    def size(self) -> int:
        return self.grid.size

    def as_image(self) -> np.ndarray:
        """(N, N) view indexed [row, col]."""
        return self.grid.as_image(self.values)

    @property
    def peak_index(self) -> int:
        return int(np.argmax(self.values))

    @property
    def peak_row_col(self) -> tuple[int, int]:
        return self.grid.row_col(self.peak_index)

    def total(self) -> float:
        return float(np.sum(self.values))


class PsfSystem(BaseModel):
    """
    Dense DAMAS matrix A; column s is the PSF of a unit source at grid point s.
    """

    matrix: np.ndarray = Field(..., description="(S, S) float64, C-contiguous")
    grid: ScanGrid
    diagonal_removed: bool = False

    @model_validator(mode="after")
    def _check_matrix(self) -> "PsfSystem":
        expected = (self.grid.size, self.grid.size)
        if self.matrix.shape != expected:
            raise ValueError(f"PSF matrix must have shape {expected}, got {self.matrix.shape}")
        if self.matrix.dtype != np.float64 or not self.matrix.flags.c_contiguous:
            raise ValueError("PSF matrix must be C-contiguous float64")
        return self

    @property
    def size(self) -> int:
        return self.grid.size

    @property
    def diagonal(self) -> np.ndarray:
        return np.diag(self.matrix).copy()

    def column(self, s: int) -> np.ndarray:
        return self.matrix[:, s].copy()
