"""
Source scene and cross-spectral data models.
"""

import numpy as np
from pydantic import Field, field_validator, model_validator

from easydamas.models.base import BaseModel

HERMITIAN_TOLERANCE = 1e-10


class SourceEntry(BaseModel):
    """One point source on the scan grid."""

    index: int = Field(..., ge=0, description="Flat grid index s")
    amplitude: float = Field(..., ge=0, description="Amplitude q_s at the array centre (Pa)")


class SourceScene(BaseModel):
    """
    Incoherent point sources placed on scan grid points.

    Power descriptors are x_s = q_s^2, so ``total_power`` is the set power P0.
    """

    entries: list[SourceEntry] = Field(default_factory=list)
    grid_size: int = Field(..., gt=0, description="Number of grid points S")
    frequency: float = Field(default=3000.0, gt=0, description="Frequency (Hz)")
    name: str | None = None

    @model_validator(mode="after")
    def _check_entries(self) -> "SourceScene":
        seen: set[int] = set()
        for entry in self.entries:
            if entry.index >= self.grid_size:
                raise ValueError(
                    f"source index {entry.index} out of range for grid of size {self.grid_size}"
                )
            if entry.index in seen:
                raise ValueError(f"duplicate source index {entry.index}")
            seen.add(entry.index)
        return self

    @property
    def n_sources(self) -> int:
        return len(self.entries)

    @property
    def indices(self) -> np.ndarray:
        return np.array([e.index for e in self.entries], dtype=np.int64)

    @property
    def amplitudes(self) -> np.ndarray:
        return np.array([e.amplitude for e in self.entries], dtype=np.float64)

    @property
    def total_power(self) -> float:
        """P0 = sum of q_s^2."""
        return float(np.sum(self.amplitudes**2))

    def power_vector(self) -> np.ndarray:
        """Length-S vector x_true with x_s = q_s^2 at source points, 0 elsewhere."""
        x = np.zeros(self.grid_size, dtype=np.float64)
        if self.entries:
            x[self.indices] = self.amplitudes**2
        return x


class SpectralData(BaseModel):
    """Cross-spectral matrix of the microphone signals at one angular frequency."""

    csm: np.ndarray = Field(..., description="(M, M) complex CSM (Pa^2)")
    omega: float = Field(..., gt=0, description="Angular frequency (rad/s)")
    frames: int = Field(default=1, ge=1, description="Number of averaged frames I")
    diagonal_removed: bool = False

    @field_validator("csm")
    @classmethod
    def validate_csm(cls, v: np.ndarray) -> np.ndarray:
        csm = np.asarray(v, dtype=np.complex128)
        if csm.ndim != 2 or csm.shape[0] != csm.shape[1]:
            raise ValueError(f"csm must be square, got shape {csm.shape}")
        if not np.all(np.isfinite(csm)):
            raise ValueError("csm must be finite")
        scale = float(np.max(np.abs(csm))) if csm.size else 0.0
        if scale > 0 and np.max(np.abs(csm - csm.conj().T)) > HERMITIAN_TOLERANCE * scale:
            raise ValueError("csm must be Hermitian")
        return csm

    @model_validator(mode="after")
    def _check_diagonal(self) -> "SpectralData":
        if not self.diagonal_removed:
            diag = np.diag(self.csm)
            scale = float(np.max(np.abs(self.csm))) if self.csm.size else 0.0
            if np.any(diag.real < -HERMITIAN_TOLERANCE * scale):
                raise ValueError("csm diagonal must be nonnegative")
        return self

    @property
    def n_mics(self) -> int:
        return int(self.csm.shape[0])
