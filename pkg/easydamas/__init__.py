"""
EasyDamas - DAMAS deconvolution on wavelet-compressed scan grids

Delay-and-sum beamforming, DAMAS Gauss-Seidel deconvolution and
interpolating-wavelet compression of the computational grid for planar
microphone arrays, with the four reference simulation cases.
"""

__version__ = "0.1.0"
__author__ = "EasyDamas Team"

from easydamas.config import Settings, get_settings, load_settings

__all__ = ["Settings", "get_settings", "load_settings", "__version__"]
