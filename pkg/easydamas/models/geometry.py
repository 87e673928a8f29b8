"""
Geometry models for EasyDamas.

Defines the microphone array setup and the planar scan grid. Both are
immutable after construction and safe to share read-only across threads.
"""

import math

import numpy as np
from pydantic import Field, model_validator

from easydamas.models.base import FrozenModel

DISC_TOLERANCE = 1e-9


class ArraySetup(FrozenModel):
    """
    Planar microphone array facing a parallel scan plane.

    The origin is the array centre; microphones lie in z = 0 and the scan
    plane sits at z = z0.
    """

    mic_positions: np.ndarray = Field(..., description="(M, 3) microphone positions (m)")
    aperture: float = Field(..., description="Aperture diameter D (m)")
    standoff: float = Field(..., description="Scan plane distance z0 (m)")
    opening_angle: float = Field(..., description="Opening angle alpha (rad)")
    frequency: float = Field(..., description="Frequency f (Hz)")
    speed_of_sound: float = Field(default=340.0, description="Speed of sound c0 (m/s)")

    @model_validator(mode="after")
    def _check_invariants(self) -> "ArraySetup":
        positions = np.asarray(self.mic_positions, dtype=np.float64)
        if positions.ndim != 2 or positions.shape[1] != 3:
            raise ValueError(f"mic_positions must have shape (M, 3), got {positions.shape}")
        if positions.shape[0] < 2:
            raise ValueError("at least 2 microphones are required")
        if not np.all(np.isfinite(positions)):
            raise ValueError("mic_positions must be finite")
        if np.any(np.abs(positions[:, 2]) > DISC_TOLERANCE):
            raise ValueError("microphones must lie in the array plane z = 0")
        if not self.aperture > 0:
            raise ValueError("aperture must be > 0")
        radii = np.hypot(positions[:, 0], positions[:, 1])
        if np.any(radii > self.aperture / 2 + DISC_TOLERANCE):
            raise ValueError(
                f"microphone at radius {radii.max():.6f} m lies outside the "
                f"{self.aperture} m aperture"
            )
        if not self.standoff > 0:
            raise ValueError("standoff z0 must be > 0")
        if not 0 < self.opening_angle < math.pi:
            raise ValueError("opening angle must be in (0, pi)")
        if not self.frequency > 0:
            raise ValueError("frequency must be > 0")
        if not self.speed_of_sound > 0:
            raise ValueError("speed of sound must be > 0")
        positions.setflags(write=False)
        object.__setattr__(self, "mic_positions", positions)
        return self

    @property
    def n_mics(self) -> int:
        return int(self.mic_positions.shape[0])

    @property
    def off_axis_angle(self) -> float:
        """phi = alpha / 2."""
        return self.opening_angle / 2

    @property
    def omega(self) -> float:
        return 2 * math.pi * self.frequency

    @property
    def wavenumber(self) -> float:
        """k = omega / c0."""
        return self.omega / self.speed_of_sound

    @property
    def scan_length(self) -> float:
        """L = 2 z0 tan(alpha / 2)."""
        return 2 * self.standoff * math.tan(self.opening_angle / 2)


class ScanGrid(FrozenModel):
    """
    Equidistant N x N lattice on the scan plane, centred on the array axis.

    Flat index s = row * N + col, rows run along y and columns along x.
    """

    n_per_side: int = Field(..., description="Points per side N")
    side_length: float = Field(..., description="Side length L (m)")
    standoff: float = Field(..., description="Plane distance z0 (m)")
    points: np.ndarray = Field(..., description="(S, 3) point positions, row-major")

    @model_validator(mode="after")
    def _check_invariants(self) -> "ScanGrid":
        if self.n_per_side < 2:
            raise ValueError("n_per_side must be >= 2")
        expected = (self.n_per_side * self.n_per_side, 3)
        if self.points.shape != expected:
            raise ValueError(f"points must have shape {expected}, got {self.points.shape}")
        self.points.setflags(write=False)
        return self

    @property
    def size(self) -> int:
        """S = N * N."""
        return self.n_per_side * self.n_per_side

    @property
    def spacing(self) -> float:
        """dx = L / (N - 1)."""
        return self.side_length / (self.n_per_side - 1)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.n_per_side, self.n_per_side)

    def index(self, row: int, col: int) -> int:
        """Flat index of (row, col)."""
        n = self.n_per_side
        if not (0 <= row < n and 0 <= col < n):
            raise IndexError(f"({row}, {col}) outside {n}x{n} grid")
        return row * n + col

    def row_col(self, s: int) -> tuple[int, int]:
        """(row, col) of flat index s."""
        if not 0 <= s < self.size:
            raise IndexError(f"index {s} outside grid of size {self.size}")
        return divmod(s, self.n_per_side)

    def as_image(self, values: np.ndarray) -> np.ndarray:
        """Reshape a length-S vector to (N, N) with [row, col] indexing."""
        return np.asarray(values).reshape(self.shape)


class SpacingCheck(FrozenModel):
    """Result of the grid-spacing rule dx / B <= 0.2."""

    ratio: float
    limit: float = 0.2
    exceeds_limit: bool
