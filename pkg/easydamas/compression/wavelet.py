"""
Wavelet compression of the scan grid.

Levels are visited from coarse to fine. Each finer level is predicted from
the exact map values on the level below, and a point is kept when its
detail reaches the threshold. Level-0 points are always kept.
"""

import numpy as np

from easydamas.compression.nested import (
    build_nested_grids,
    coarse_mask,
    detail_coefficients,
    level_values,
    predict,
    resolve_stencil,
)
from easydamas.compression.stencils import BaseStencil
from easydamas.exceptions import ConfigurationError, DimensionError
from easydamas.models.compression import CompressedGrid
from easydamas.models.maps import BeamMap
from easydamas.utils.logger import get_logger

logger = get_logger(__name__)

UNTAGGED = -1


def effective_threshold(b: BeamMap, epsilon: float, mode: str) -> float:
    """epsilon * max|b| in relative mode, epsilon in absolute mode."""
    if not epsilon > 0:
        raise ConfigurationError(f"epsilon must be > 0, got {epsilon}")
    if mode == "relative":
        return epsilon * float(np.max(np.abs(b.values)))
    if mode == "absolute":
        return epsilon
    raise ConfigurationError(f"Unknown threshold mode '{mode}'; expected relative or absolute")


def compress(
    b: BeamMap,
    epsilon: float,
    mode: str = "relative",
    stencil: str | BaseStencil = "linear",
) -> CompressedGrid:
    """
    Select the grid points whose wavelet details reach the threshold.

    A point of level j + 1 that is not on level j is kept when
    |actual - predicted| >= epsilon_eff. With epsilon_eff = 0 (a zero map in
    relative mode) only strictly non-zero details are kept.

    Args:
        b: Beamformer map driving the compression.
        epsilon: Threshold parameter (> 0).
        mode: ``relative`` (scaled by max|b|) or ``absolute``.
        stencil: Interpolation stencil name or instance.

    Returns:
        CompressedGrid with sorted indices and first-appearance level tags.
    """
    resolved = resolve_stencil(stencil)
    threshold = effective_threshold(b, epsilon, mode)
    grid = b.grid
    grids = build_nested_grids(grid.n_per_side)

    tags = np.full(grid.shape, UNTAGGED, dtype=np.int64)
    coarsest = grids.axis(0)
    tags[np.ix_(coarsest, coarsest)] = 0

    for level in range(grids.max_level):
        details = np.abs(detail_coefficients(b, grids, level, resolved))
        selected = details >= threshold if threshold > 0 else details > 0
        selected &= ~coarse_mask(details.shape[0])
        axis = grids.axis(level + 1)
        rows, cols = np.nonzero(selected)
        tags[axis[rows], axis[cols]] = level + 1
        logger.debug(f"Level {level + 1}: {rows.size} of {details.size} points kept")

    flat = tags.ravel()
    kept = np.flatnonzero(flat != UNTAGGED)
    result = CompressedGrid(
        kept=kept,
        levels=flat[kept],
        epsilon=epsilon,
        mode=mode,
        stencil=resolved.name,
        threshold=threshold,
        full_size=grid.size,
    )
    logger.info(
        f"Compressed {grid.size} -> {result.size} points "
        f"(sigma={result.sigma:.2f}, epsilon={epsilon} {mode}, {resolved.name})"
    )
    return result


def reconstruct(b: BeamMap, cg: CompressedGrid) -> np.ndarray:
    """
    Cascaded reconstruction from the kept values only.

    Starts from level 0, interpolates each finer level from the
    reconstruction below and overwrites kept points with their true values.
    """
    grid = b.grid
    if cg.full_size != grid.size:
        raise DimensionError("compressed grid size", grid.size, cg.full_size)
    grids = build_nested_grids(grid.n_per_side)
    image = b.as_image()

    kept_mask = np.zeros(grid.size, dtype=bool)
    kept_mask[cg.kept] = True
    kept_mask = kept_mask.reshape(grid.shape)

    current = level_values(image, grids, 0)
    for level in range(1, grids.max_level + 1):
        axis = grids.axis(level)
        current = predict(current, axis.shape[0], cg.stencil)
        known = kept_mask[np.ix_(axis, axis)]
        current[known] = image[np.ix_(axis, axis)][known]
    return current


def reconstruct_error_bound_check(b: BeamMap, cg: CompressedGrid) -> float:
    """max |b - b_reconstructed| over the full grid."""
    return float(np.max(np.abs(b.as_image() - reconstruct(b, cg))))
