"""
Dirty map synthesis: the beamformer input b for a known scene.
"""

from typing import Literal

from easydamas.beamform.das import das_map, dirty_map_from_sources
from easydamas.exceptions import ConfigurationError
from easydamas.models.geometry import ArraySetup
from easydamas.models.maps import BeamMap, PsfSystem, SteeringSet
from easydamas.models.scene import SourceScene
from easydamas.synth.csm import remove_diagonal, scene_csm_sampled
from easydamas.utils.logger import get_logger

logger = get_logger(__name__)

SynthesisPath = Literal["ideal", "sampled"]


def simulate_dirty_map(
    scene: SourceScene,
    setup: ArraySetup,
    steer: SteeringSet,
    psf: PsfSystem | None = None,
    path: SynthesisPath = "sampled",
    frames: int = 1000,
    snr_db: float = 15.0,
    seed: int = 0,
    diagonal_removal: bool = False,
    random_phase: bool = True,
    threads: int = 1,
) -> BeamMap:
    """
    Produce b for ``scene`` along the selected synthesis path.

    ``ideal`` evaluates b = A x_true with x_s = q_s^2 and needs ``psf``.
    ``sampled`` builds a noisy averaged CSM and beamforms it.
    """
    grid = steer.grid
    if path == "ideal":
        if psf is None:
            raise ConfigurationError("the ideal synthesis path needs the PSF matrix")
        x_true = BeamMap(values=scene.power_vector(), grid=grid)
        logger.info(f"Ideal dirty map for {scene.n_sources} source(s)")
        return dirty_map_from_sources(psf, x_true)

    if path != "sampled":
        raise ConfigurationError(f"Unknown synthesis path: {path}")

    data = scene_csm_sampled(
        scene, setup, grid, frames=frames, snr_db=snr_db, seed=seed, random_phase=random_phase
    )
    if diagonal_removal:
        data = remove_diagonal(data)
    logger.info(
        f"Sampled dirty map for {scene.n_sources} source(s): I={frames}, "
        f"SNR={snr_db} dB, seed={seed}, diagonal removal={diagonal_removal}"
    )
    return das_map(data, steer, threads=threads)
