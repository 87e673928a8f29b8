"""
Integrated source power and per-source attribution.
"""

from typing import Literal

import numpy as np

from easydamas.exceptions import DimensionError, InputError
from easydamas.models.maps import BeamMap
from easydamas.models.report import Attribution, Disc, SourcePower
from easydamas.models.scene import SourceScene


def _require_nonnegative(x: BeamMap) -> None:
    if np.any(x.values < 0):
        raise InputError("source map must be nonnegative")


def region_mask(x: BeamMap, region: Disc) -> np.ndarray:
    """
    Boolean mask of grid points within the disc (in-plane distance).

    Raises:
        InputError: The disc center is not a point of the grid.
    """
    if region.center >= x.grid.size:
        raise InputError(f"disc center {region.center} outside grid of {x.grid.size} points")
    points = x.grid.points[:, :2]
    center = x.grid.points[region.center, :2]
    dist = np.hypot(points[:, 0] - center[0], points[:, 1] - center[1])
    return dist <= region.radius


def integrated_power(x: BeamMap, region: Literal["all"] | Disc = "all") -> float:
    """
    Sum of x over the whole grid or over a disc around a grid point.

    Raises:
        InputError: Negative map values or a disc containing no grid point.
    """
    _require_nonnegative(x)
    if region == "all":
        return float(np.sum(x.values))
    if not isinstance(region, Disc):
        raise InputError(f"Unknown integration region: {region!r}")
    mask = region_mask(x, region)
    if not mask.any():
        raise InputError(f"integration disc around point {region.center} contains no grid point")
    return float(np.sum(x.values[mask]))


def attribute_to_sources(x: BeamMap, scene: SourceScene, radius: float) -> Attribution:
    """
    Assign each grid point's power to the nearest true source within ``radius``.

    Power farther than ``radius`` from every source is reported as unassigned.
    """
    if not radius > 0:
        raise InputError("attribution radius must be > 0")
    if scene.grid_size != x.size:
        raise DimensionError("scene grid size", x.size, scene.grid_size)
    _require_nonnegative(x)

    grid = x.grid
    set_powers = scene.amplitudes**2
    if scene.n_sources == 0:
        return Attribution(sources=[], unassigned=x.total(), radius=radius)

    points = grid.points[:, :2]
    sources = points[scene.indices]
    dist = np.hypot(
        points[:, None, 0] - sources[None, :, 0],
        points[:, None, 1] - sources[None, :, 1],
    )
    nearest = np.argmin(dist, axis=1)
    within = dist[np.arange(grid.size), nearest] <= radius

    attributed = np.bincount(
        nearest[within], weights=x.values[within], minlength=scene.n_sources
    )
    entries = []
    for k, index in enumerate(scene.indices):
        row, col = grid.row_col(int(index))
        entries.append(
            SourcePower(
                index=int(index),
                row=row,
                col=col,
                set_power=float(set_powers[k]),
                attributed_power=float(attributed[k]),
            )
        )
    return Attribution(
        sources=entries,
        unassigned=float(np.sum(x.values[~within])),
        radius=radius,
    )


def power_error(p0: float, p: float) -> float:
    """eta = (P0 - P) / P0."""
    if p0 == 0:
        raise InputError("set power P0 must be non-zero")
    return (p0 - p) / p0
