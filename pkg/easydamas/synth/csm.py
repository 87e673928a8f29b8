"""
Cross-spectral matrix synthesis.

Sources are mutually incoherent point monopoles on grid points. The ideal
CSM is the exact expectation; the sampled CSM averages I frames with random
source phasors and additive white microphone noise.
"""

import math

import numpy as np

from easydamas.beamform.steering import steering_vectors
from easydamas.exceptions import InputError, StateError
from easydamas.models.geometry import ArraySetup, ScanGrid
from easydamas.models.scene import SourceScene, SpectralData
from easydamas.utils.logger import get_logger

logger = get_logger(__name__)


def _check_scene(scene: SourceScene, grid: ScanGrid) -> None:
    if scene.grid_size != grid.size:
        raise InputError(f"scene is defined for {scene.grid_size} points, grid has {grid.size}")


def _source_propagation(scene: SourceScene, setup: ArraySetup, grid: ScanGrid) -> np.ndarray:
    """(P, M) propagation vectors of the scene's source points."""
    points = grid.points[scene.indices]
    _, g = steering_vectors(setup.mic_positions, points, setup.wavenumber)
    return g


def _hermitise(csm: np.ndarray) -> np.ndarray:
    return 0.5 * (csm + csm.conj().T)


def scene_csm_ideal(scene: SourceScene, setup: ArraySetup, grid: ScanGrid) -> SpectralData:
    """
    Noiseless CSM of incoherent sources: C = sum_s q_s^2 g(r_s) g(r_s)^H.
    """
    _check_scene(scene, grid)
    n_mics = setup.n_mics
    if scene.n_sources == 0:
        csm = np.zeros((n_mics, n_mics), dtype=np.complex128)
    else:
        g = _source_propagation(scene, setup, grid)
        csm = _hermitise((g.T * scene.amplitudes**2) @ g.conj())
    return SpectralData(csm=csm, omega=setup.omega, frames=1)


def scene_csm_sampled(
    scene: SourceScene,
    setup: ArraySetup,
    grid: ScanGrid,
    frames: int,
    snr_db: float,
    seed: int,
    random_phase: bool = True,
) -> SpectralData:
    """
    CSM averaged over ``frames`` snapshots with noise ``snr_db`` below the signal.

    Each frame draws circular Gaussian phasors q_s (n1 + j n2) / sqrt(2) per
    source (or uses q_s itself when ``random_phase`` is off), then adds
    complex white noise per microphone. The noise variance is the
    array-averaged signal power divided by 10^(snr_db / 10); ``snr_db = inf``
    adds no noise.

    Raises:
        InputError: The scene carries no power and a finite SNR was requested.
    """
    _check_scene(scene, grid)
    if frames < 1:
        raise InputError("frames must be >= 1")

    n_mics = setup.n_mics
    rng = np.random.default_rng(seed)
    signals = np.zeros((frames, n_mics), dtype=np.complex128)

    signal_power = 0.0
    if scene.n_sources:
        g = _source_propagation(scene, setup, grid)
        amplitudes = scene.amplitudes
        if random_phase:
            draws = rng.standard_normal((frames, scene.n_sources)) + 1j * rng.standard_normal(
                (frames, scene.n_sources)
            )
            phasors = amplitudes * draws / math.sqrt(2.0)
        else:
            phasors = np.broadcast_to(amplitudes.astype(np.complex128), (frames, scene.n_sources))
        signals = phasors @ g
        signal_power = float(np.mean(amplitudes**2 @ np.abs(g) ** 2))

    if math.isfinite(snr_db):
        if signal_power <= 0:
            raise InputError("SNR is undefined for a scene without source power")
        noise_var = signal_power / 10 ** (snr_db / 10)
        noise = rng.standard_normal((frames, n_mics)) + 1j * rng.standard_normal((frames, n_mics))
        signals = signals + math.sqrt(noise_var / 2.0) * noise
        logger.debug(f"Noise variance {noise_var:.4e} Pa^2 for SNR {snr_db} dB")

    csm = _hermitise(signals.T @ signals.conj() / frames)
    return SpectralData(csm=csm, omega=setup.omega, frames=frames)


def remove_diagonal(data: SpectralData) -> SpectralData:
    """Zero the CSM diagonal."""
    if data.diagonal_removed:
        raise StateError("CSM diagonal has already been removed")
    csm = data.csm.copy()
    np.fill_diagonal(csm, 0.0)
    return SpectralData(csm=csm, omega=data.omega, frames=data.frames, diagonal_removed=True)
