"""
Steering and propagation vectors.

For a focus point r and microphone r_m with d = |r - r_m|:

    v_m(r)   = d / |r|   * exp(-j k d)
    g_m(r_s) = |r_s| / d * exp(-j k d)

so that v(r_s)^H g(r_s) = M at every grid point.
"""

import numpy as np

from easydamas.exceptions import SingularityError
from easydamas.models.geometry import ArraySetup, ScanGrid
from easydamas.models.maps import SteeringSet
from easydamas.utils.logger import get_logger
from easydamas.utils.parallel import run_chunked

logger = get_logger(__name__)


def steering_vectors(
    mic_positions: np.ndarray,
    points: np.ndarray,
    wavenumber: float,
    index_offset: int = 0,
) -> tuple[np.ndarray, np.ndarray]:
    """
    Compute (v, g) for arbitrary focus points.

    Args:
        mic_positions: (M, 3) microphone positions.
        points: (P, 3) focus points.
        wavenumber: k (rad/m).
        index_offset: Added to point indices in singularity errors.

    Returns:
        Two (P, M) complex128 arrays.
    """
    diff = points[:, None, :] - mic_positions[None, :, :]
    dist = np.sqrt(np.sum(diff * diff, axis=2))
    zero = np.argwhere(dist == 0.0)
    if zero.size:
        p, m = zero[0]
        raise SingularityError(int(p) + index_offset, int(m))

    radius = np.sqrt(np.sum(points * points, axis=1))[:, None]
    phase = np.exp(-1j * wavenumber * dist)
    v = (dist / radius) * phase
    g = (radius / dist) * phase
    return v, g


def steering(setup: ArraySetup, grid: ScanGrid, threads: int = 1) -> SteeringSet:
    """
    Steering set for every point of the scan grid.

    Raises:
        SingularityError: A grid point coincides with a microphone.
    """
    n_points, n_mics = grid.size, setup.n_mics
    v = np.empty((n_points, n_mics), dtype=np.complex128)
    g = np.empty((n_points, n_mics), dtype=np.complex128)
    mics = setup.mic_positions
    k = setup.wavenumber

    def fill(part: slice) -> None:
        v[part], g[part] = steering_vectors(mics, grid.points[part], k, index_offset=part.start)

    run_chunked(n_points, fill, threads=threads)
    logger.debug(f"Steering vectors for {n_points} points x {n_mics} microphones, k={k:.4f}")
    return SteeringSet(v=v, g=g, wavenumber=k, grid=grid)
