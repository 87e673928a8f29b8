"""Scene and cross-spectral synthesis for EasyDamas."""

from easydamas.synth.cases import CASE_EPSILONS, builtin_case, damas_raster
from easydamas.synth.csm import remove_diagonal, scene_csm_ideal, scene_csm_sampled
from easydamas.synth.dirty_map import simulate_dirty_map

__all__ = [
    "CASE_EPSILONS",
    "builtin_case",
    "damas_raster",
    "remove_diagonal",
    "scene_csm_ideal",
    "scene_csm_sampled",
    "simulate_dirty_map",
]
