"""Wavelet grid compression for EasyDamas."""

from easydamas.compression.nested import (
    build_nested_grids,
    detail_coefficients,
    predict,
)
from easydamas.compression.stencils import (
    BaseStencil,
    CubicStencil,
    LinearStencil,
    StencilFactory,
)
from easydamas.compression.wavelet import (
    compress,
    effective_threshold,
    reconstruct,
    reconstruct_error_bound_check,
)

__all__ = [
    "BaseStencil",
    "CubicStencil",
    "LinearStencil",
    "StencilFactory",
    "build_nested_grids",
    "compress",
    "detail_coefficients",
    "effective_threshold",
    "predict",
    "reconstruct",
    "reconstruct_error_bound_check",
]
