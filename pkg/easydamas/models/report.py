"""
Report models: power attribution, timing statistics and the case report.
"""

import math

from pydantic import Field

from easydamas.models.base import BaseModel, FrozenModel


class Disc(FrozenModel):
    """Integration region: grid points within ``radius`` of the grid point ``center``."""

    center: int = Field(..., ge=0)
    radius: float = Field(..., gt=0, description="Radius (m)")


class SourcePower(BaseModel):
    """Power attributed to one true source."""

    index: int
    row: int
    col: int
    set_power: float
    attributed_power: float

    @property
    def level_db(self) -> float | None:
        """Attributed power relative to the set power (dB)."""
        if self.attributed_power <= 0 or self.set_power <= 0:
            return None
        return 10 * math.log10(self.attributed_power / self.set_power)


class Attribution(BaseModel):
    """Per-source powers plus the power no source claimed."""

    sources: list[SourcePower] = Field(default_factory=list)
    unassigned: float = 0.0
    radius: float

    @property
    def assigned(self) -> float:
        return sum(s.attributed_power for s in self.sources)


class BenchStats(BaseModel):
    """Wall-clock statistics of repeated runs, warm-up excluded."""

    median: float
    min: float
    max: float
    repeats: int


class ScalingRow(BaseModel):
    """One problem size of a scaling benchmark."""

    size: int
    stats: BenchStats
    ratio_to_previous: float | None = None


class EpsilonSweepRow(BaseModel):
    """Compression and solve outcome for one threshold."""

    epsilon: float
    sigma: float
    kept: int
    p2: float
    eta2: float
    t2: float = Field(..., description="Seconds per 1000 sweeps")


class CaseReport(BaseModel):
    """
    Outcome of one simulation case, laid out like the results table.

    Powers are raw sums of the x maps; times are seconds per 1000 sweeps.
    """

    case: str
    frequency: float
    scan_length: float
    beamwidth: float
    spacing_ratio: float
    n_points: int
    n_mics: int

    p0: float = Field(..., description="Set source power")
    p1: float = Field(..., description="Integrated power on the original grid")
    p2: float = Field(..., description="Integrated power on the compressed grid")
    eta1: float
    eta2: float

    epsilon: float
    mode: str
    stencil: str
    kept: int
    sigma: float

    t1: float = Field(..., description="Original grid, seconds per 1000 sweeps")
    t2: float = Field(..., description="Compressed grid, seconds per 1000 sweeps")
    compression_time: float
    efficiency_gain: float

    peak_full: tuple[int, int]
    peak_compressed: tuple[int, int]
    attribution_full: Attribution
    attribution_compressed: Attribution
