"""
Scan grid construction and resolution checks.
"""

import math

import numpy as np

from easydamas.exceptions import ConfigurationError
from easydamas.models.geometry import ArraySetup, ScanGrid, SpacingCheck
from easydamas.utils.logger import get_logger

logger = get_logger(__name__)

RAYLEIGH_FACTOR = 1.22
SPACING_LIMIT = 0.2


def build_scan_grid(setup: ArraySetup, n_per_side: int) -> ScanGrid:
    """
    Build the N x N scan grid spanning [-L/2, L/2]^2 at z = z0.

    Args:
        setup: Array setup providing z0 and alpha.
        n_per_side: Points per side N (>= 2).

    Returns:
        ScanGrid with row-major points (rows along y).
    """
    if n_per_side < 2:
        raise ConfigurationError(f"Scan grid needs N >= 2, got {n_per_side}")

    length = setup.scan_length
    axis = np.linspace(-length / 2, length / 2, n_per_side)
    xx, yy = np.meshgrid(axis, axis)
    points = np.stack(
        [xx.ravel(), yy.ravel(), np.full(n_per_side * n_per_side, setup.standoff)], axis=1
    )

    logger.debug(
        f"Scan grid {n_per_side}x{n_per_side}, L={length:.4f} m, "
        f"dx={length / (n_per_side - 1):.4f} m"
    )
    return ScanGrid(
        n_per_side=n_per_side,
        side_length=length,
        standoff=setup.standoff,
        points=points,
    )


def rayleigh_beamwidth(setup: ArraySetup) -> float:
    """B = 1.22 z0 c0 / (cos^3(phi) D f)."""
    cos_phi = math.cos(setup.off_axis_angle)
    return (
        RAYLEIGH_FACTOR
        * setup.standoff
        * setup.speed_of_sound
        / (cos_phi**3 * setup.aperture * setup.frequency)
    )


def spacing_ratio(grid: ScanGrid, beamwidth: float) -> SpacingCheck:
    """
    Ratio dx / B, flagged when it exceeds 0.2 (the bound itself passes).
    """
    if not beamwidth > 0:
        raise ConfigurationError("beamwidth must be > 0")
    ratio = grid.spacing / beamwidth
    exceeds = ratio > SPACING_LIMIT
    if exceeds:
        logger.warning(
            f"Grid spacing dx/B = {ratio:.3f} exceeds {SPACING_LIMIT}; "
            "DAMAS results may suffer from spatial aliasing"
        )
    return SpacingCheck(ratio=ratio, limit=SPACING_LIMIT, exceeds_limit=exceeds)
