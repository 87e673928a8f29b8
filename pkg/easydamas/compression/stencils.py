"""
Interpolation stencils for the wavelet predict step.

Defines the stencil interface and the factory used to look stencils up by
name. A stencil turns a coarse level of n0 samples into a fine level of n1
samples: even fine positions copy the coarse sample, odd positions are
Lagrange interpolants of the nearest coarse samples, shifted inward near the
boundary.
"""

import math
from abc import ABC, abstractmethod

import numpy as np

from easydamas.exceptions import ConfigurationError
from easydamas.utils.logger import get_logger

logger = get_logger(__name__)


def lagrange_weights(nodes: np.ndarray, t: float) -> np.ndarray:
    """Weights w_k with sum_k w_k f(nodes[k]) interpolating f at t."""
    weights = np.ones(nodes.shape[0], dtype=np.float64)
    for k, xk in enumerate(nodes):
        for m, xm in enumerate(nodes):
            if m != k:
                weights[k] *= (t - xm) / (xk - xm)
    return weights


class BaseStencil(ABC):
    """
    Abstract interpolation stencil.

    Usage:
        stencil = StencilFactory.create("linear")
        fine = stencil.interpolation_matrix(13, 25) @ coarse
    """

    @property
    @abstractmethod
    def name(self) -> str:
        """Registry name of the stencil."""
        ...

    @property
    @abstractmethod
    def n_points(self) -> int:
        """Number of coarse samples per interpolant."""
        ...

    def support(self, t: float, n_coarse: int) -> tuple[int, int]:
        """First node and node count of the stencil for target position t."""
        p = min(self.n_points, n_coarse)
        start = math.floor(t) - (p // 2 - 1)
        return min(max(start, 0), n_coarse - p), p

    def interpolation_matrix(self, n_coarse: int, n_fine: int) -> np.ndarray:
        """
        (n_fine, n_coarse) matrix mapping coarse samples to the fine level.

        Fine local index i sits at coarse coordinate i / 2.
        """
        if n_coarse != (n_fine + 1) // 2:
            raise ConfigurationError(
                f"coarse level of {n_coarse} samples does not nest into {n_fine}"
            )
        matrix = np.zeros((n_fine, n_coarse), dtype=np.float64)
        for i in range(n_fine):
            if i % 2 == 0:
                matrix[i, i // 2] = 1.0
                continue
            t = i / 2
            start, p = self.support(t, n_coarse)
            nodes = np.arange(start, start + p, dtype=np.float64)
            matrix[i, start : start + p] = lagrange_weights(nodes, t)
        return matrix


class LinearStencil(BaseStencil):
    """Two-point stencil, exact for linear data."""

    @property
    def name(self) -> str:
        return "linear"

    @property
    def n_points(self) -> int:
        return 2


class CubicStencil(BaseStencil):
    """Four-point stencil, exact for cubic data."""

    @property
    def name(self) -> str:
        return "cubic"

    @property
    def n_points(self) -> int:
        return 4


class StencilFactory:
    """
    Factory for interpolation stencils.

    Usage:
        stencil = StencilFactory.create("cubic")
    """

    _stencils: dict[str, type[BaseStencil]] = {}

    @classmethod
    def register(cls, name: str, stencil_class: type[BaseStencil]) -> None:
        """
        Register a stencil class under a name.

        Args:
            name: Stencil identifier (e.g., 'linear', 'cubic')
            stencil_class: Stencil class to register
        """
        cls._stencils[name.lower()] = stencil_class
        logger.debug(f"Registered stencil {name}: {stencil_class.__name__}")

    @classmethod
    def create(cls, name: str) -> BaseStencil:
        """
        Create a stencil by name.

        Raises:
            ConfigurationError: If no stencil is registered under ``name``
        """
        key = name.lower()
        if key not in cls._stencils:
            available = ", ".join(cls._stencils.keys())
            raise ConfigurationError(f"Unknown stencil '{name}'. Available stencils: {available}")
        return cls._stencils[key]()

    @classmethod
    def get_supported_types(cls) -> list[str]:
        return list(cls._stencils.keys())


StencilFactory.register("linear", LinearStencil)
StencilFactory.register("cubic", CubicStencil)
