"""
Nested dyadic grids and the predict step of the interpolating wavelet transform.
"""

import numpy as np

from easydamas.compression.stencils import BaseStencil, StencilFactory
from easydamas.exceptions import ConfigurationError, DimensionError
from easydamas.models.compression import NestedGrids
from easydamas.models.maps import BeamMap


def build_nested_grids(n_per_side: int) -> NestedGrids:
    """
    Levels 0..J with J = floor(log2 N).

    Level J is 0..N-1 on each axis and every coarser level keeps the
    even-position entries of the next finer one.
    """
    if n_per_side < 2:
        raise ConfigurationError(f"Nested grids need N >= 2, got {n_per_side}")
    max_level = n_per_side.bit_length() - 1
    axes = [np.arange(n_per_side, dtype=np.int64)]
    for _ in range(max_level):
        axes.append(axes[-1][::2].copy())
    axes.reverse()
    return NestedGrids(n_per_side=n_per_side, axes=axes)


def resolve_stencil(stencil: str | BaseStencil) -> BaseStencil:
    return StencilFactory.create(stencil) if isinstance(stencil, str) else stencil


def predict(coarse: np.ndarray, n_fine: int, stencil: str | BaseStencil = "linear") -> np.ndarray:
    """
    Interpolate an (n0, n0) coarse level onto the (n_fine, n_fine) finer level.

    Points on even rows and odd columns are interpolated along the row, odd
    rows and even columns along the column, and odd/odd points by the
    tensor product. Even/even points reproduce the coarse values.
    """
    values = np.asarray(coarse, dtype=np.float64)
    if values.ndim != 2 or values.shape[0] != values.shape[1]:
        raise DimensionError("coarse level", "square 2-D array", values.shape)
    interp = resolve_stencil(stencil).interpolation_matrix(values.shape[0], n_fine)
    return interp @ values @ interp.T


def coarse_mask(n_fine: int) -> np.ndarray:
    """Boolean (n, n) mask of the even/even points inherited from the coarse level."""
    even = np.arange(n_fine) % 2 == 0
    return even[:, None] & even[None, :]


def level_values(image: np.ndarray, grids: NestedGrids, level: int) -> np.ndarray:
    axis = grids.axis(level)
    return image[np.ix_(axis, axis)]


def detail_coefficients(
    b: BeamMap, grids: NestedGrids, level: int, stencil: str | BaseStencil = "linear"
) -> np.ndarray:
    """
    Details of level ``level + 1`` predicted from the exact values on ``level``.

    Returns the (n_{j+1}, n_{j+1}) array of actual minus predicted values,
    with zeros at the even/even points.
    """
    if not 0 <= level < grids.max_level:
        raise ConfigurationError(f"level must lie in [0, {grids.max_level}), got {level}")
    if grids.n_per_side != b.grid.n_per_side:
        raise DimensionError("nested grid size", b.grid.n_per_side, grids.n_per_side)
    image = b.as_image()
    fine = level_values(image, grids, level + 1)
    details = fine - predict(level_values(image, grids, level), fine.shape[0], stencil)
    details[coarse_mask(fine.shape[0])] = 0.0
    return details
