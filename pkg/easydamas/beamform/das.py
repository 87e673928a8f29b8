"""
Delay-and-sum beamforming and the DAMAS linear system.
"""

import time

import numpy as np

from easydamas.exceptions import ConfigurationError, DimensionError, InputError, ResourceError
from easydamas.models.geometry import ArraySetup, ScanGrid
from easydamas.models.maps import BeamMap, PsfSystem, SteeringSet
from easydamas.models.scene import SpectralData
from easydamas.utils.logger import get_logger
from easydamas.utils.parallel import run_chunked

logger = get_logger(__name__)

BYTES_PER_ENTRY = 8


def _normalisation(n_mics: int, diagonal_removed: bool) -> float:
    if not diagonal_removed:
        return float(n_mics * n_mics)
    if n_mics < 2:
        raise ConfigurationError("diagonal removal needs at least 2 microphones")
    return float(n_mics * n_mics - n_mics)


def das_map(data: SpectralData, steer: SteeringSet, threads: int = 1) -> BeamMap:
    """
    Mean-square DAS output b(r) = v^H C v / M^2 at every grid point.

    With a diagonal-removed CSM the divisor is M^2 - M and negative values
    are clamped to 0.
    """
    if data.n_mics != steer.n_mics:
        raise DimensionError("CSM size vs steering microphones", steer.n_mics, data.n_mics)

    norm = _normalisation(data.n_mics, data.diagonal_removed)
    csm = data.csm
    values = np.empty(steer.n_points, dtype=np.float64)

    def fill(part: slice) -> None:
        weights = steer.v[part]
        projected = weights.conj() @ csm
        values[part] = np.real(np.sum(projected * weights, axis=1)) / norm

    run_chunked(steer.n_points, fill, threads=threads)
    if data.diagonal_removed:
        np.maximum(values, 0.0, out=values)
    return BeamMap(values=values, grid=steer.grid)


def psf_matrix(
    setup: ArraySetup | None,
    grid: ScanGrid,
    steer: SteeringSet,
    threads: int = 1,
    diagonal_removed: bool = False,
    max_matrix_bytes: int | None = None,
) -> PsfSystem:
    """
    Assemble A with A[r, s] = |v(r)^H g(r_s)|^2 / M^2, column block by column block.

    Args:
        setup: Array setup; when given its microphone count must match ``steer``.
        grid: Scan grid of the steering set.
        steer: Steering and propagation vectors.
        threads: Parallelism width (does not change the result).
        diagonal_removed: Build the PSF seen by a diagonal-removed beamformer.
        max_matrix_bytes: Memory budget for the dense matrix.

    Raises:
        ResourceError: The S x S matrix exceeds ``max_matrix_bytes``.
    """
    if setup is not None and setup.n_mics != steer.n_mics:
        raise DimensionError("steering microphones", setup.n_mics, steer.n_mics)
    if grid.size != steer.n_points:
        raise DimensionError("steering points", grid.size, steer.n_points)

    size = grid.size
    requested = size * size * BYTES_PER_ENTRY
    if max_matrix_bytes is not None and requested > max_matrix_bytes:
        raise ResourceError(
            requested,
            max_matrix_bytes,
            f"Reduce the grid (N={grid.n_per_side}) or raise MAX_MATRIX_BYTES.",
        )

    norm = _normalisation(steer.n_mics, diagonal_removed)
    v_conj = steer.v.conj()
    v_power = np.abs(steer.v) ** 2 if diagonal_removed else None
    matrix = np.empty((size, size), dtype=np.float64)

    def fill(part: slice) -> None:
        g_block = steer.g[part]
        coherent = np.abs(v_conj @ g_block.T) ** 2
        if v_power is not None:
            coherent -= v_power @ (np.abs(g_block) ** 2).T
            np.maximum(coherent, 0.0, out=coherent)
        matrix[:, part] = coherent / norm

    start = time.perf_counter()
    run_chunked(size, fill, threads=threads)
    logger.info(
        f"PSF matrix {size}x{size} assembled in {time.perf_counter() - start:.2f}s "
        f"({requested / 2**20:.1f} MiB)"
    )
    return PsfSystem(matrix=matrix, grid=grid, diagonal_removed=diagonal_removed)


def dirty_map_from_sources(system: PsfSystem, x: BeamMap) -> BeamMap:
    """b = A x for a nonnegative source distribution x."""
    if x.size != system.size:
        raise DimensionError("source map length", system.size, x.size)
    if np.any(x.values < 0):
        raise InputError("source distribution must be nonnegative")
    return BeamMap(values=system.matrix @ x.values, grid=system.grid)
