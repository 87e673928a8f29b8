"""Geometry package for EasyDamas."""

from easydamas.geometry.array import array_setup_from_config, build_array_setup, default_array
from easydamas.geometry.grid import build_scan_grid, rayleigh_beamwidth, spacing_ratio

__all__ = [
    "array_setup_from_config",
    "build_array_setup",
    "build_scan_grid",
    "default_array",
    "rayleigh_beamwidth",
    "spacing_ratio",
]
