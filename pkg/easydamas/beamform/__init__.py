"""Beamforming package for EasyDamas."""

from easydamas.beamform.das import das_map, dirty_map_from_sources, psf_matrix
from easydamas.beamform.steering import steering, steering_vectors

__all__ = [
    "das_map",
    "dirty_map_from_sources",
    "psf_matrix",
    "steering",
    "steering_vectors",
]
