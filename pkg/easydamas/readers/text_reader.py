"""
Plain-text readers for layouts, scenes, maps and compressed grids.
"""

import re
from pathlib import Path

import numpy as np

from easydamas.exceptions import DimensionError, InputError
from easydamas.models.compression import CompressedGrid
from easydamas.models.geometry import ScanGrid
from easydamas.models.maps import BeamMap
from easydamas.models.scene import SourceEntry, SourceScene
from easydamas.utils.logger import get_logger

logger = get_logger(__name__)

_HEADER_FIELD = re.compile(r"(\w+)=(\S+)")


def _load_table(path: str | Path, columns: int, what: str) -> np.ndarray:
    try:
        data = np.loadtxt(path, comments="#", ndmin=2, dtype=np.float64)
    except (OSError, ValueError) as e:
        raise InputError(f"Cannot read {what} {path}: {e}") from e
    if data.size and data.shape[1] != columns:
        raise InputError(
            f"{what.capitalize()} {path} must have {columns} columns, got {data.shape[1]}"
        )
    return data.reshape(-1, columns)


def load_array_layout(path: str | Path) -> np.ndarray:
    """Read ``x y z`` per line ('#' starts a comment)."""
    data = _load_table(path, 3, "array layout")
    logger.info(f"Loaded {data.shape[0]} microphone positions from {path}")
    return data


def load_scene(path: str | Path, grid: ScanGrid, frequency: float = 3000.0) -> SourceScene:
    """Read a ``row col amplitude_Pa`` scene file."""
    data = _load_table(path, 3, "scene file")
    entries = []
    for row, col, amplitude in data:
        if row != int(row) or col != int(col):
            raise InputError(f"Scene {path}: grid coordinates must be integers, got {row}, {col}")
        try:
            index = grid.index(int(row), int(col))
        except IndexError as e:
            raise InputError(f"Scene {path}: {e}") from e
        if amplitude < 0:
            raise InputError(f"Scene {path}: negative amplitude {amplitude}")
        entries.append(SourceEntry(index=index, amplitude=float(amplitude)))
    if len({e.index for e in entries}) != len(entries):
        raise InputError(f"Scene {path}: duplicate grid points")
    entries.sort(key=lambda e: e.index)
    logger.info(f"Loaded {len(entries)} source(s) from {path}")
    return SourceScene(
        entries=entries, grid_size=grid.size, frequency=frequency, name=Path(path).stem
    )


def read_beam_map(path: str | Path, grid: ScanGrid) -> BeamMap:
    """Read an N x N comma-separated map written by ``write_beam_map``."""
    try:
        image = np.loadtxt(path, comments="#", delimiter=",", ndmin=2, dtype=np.float64)
    except (OSError, ValueError) as e:
        raise InputError(f"Cannot read beam map {path}: {e}") from e
    if image.shape != grid.shape:
        raise DimensionError(f"beam map {path}", grid.shape, image.shape)
    return BeamMap(values=image.ravel(), grid=grid)


def read_compressed_grid(path: str | Path, full_size: int) -> CompressedGrid:
    """Read an ``index row col level`` file with its epsilon/mode header."""
    meta: dict[str, str] = {}
    try:
        with open(path, encoding="utf-8") as f:
            for line in f:
                if line.startswith("#"):
                    meta.update(_HEADER_FIELD.findall(line))
    except OSError as e:
        raise InputError(f"Cannot read compressed grid {path}: {e}") from e

    if "epsilon" not in meta:
        raise InputError(f"Compressed grid {path} has no epsilon header")
    data = _load_table(path, 4, "compressed grid").astype(np.int64)
    try:
        return CompressedGrid(
            kept=data[:, 0],
            levels=data[:, 3],
            epsilon=float(meta["epsilon"]),
            mode=meta.get("mode", "relative"),
            stencil=meta.get("stencil", "linear"),
            threshold=float(meta.get("threshold", 0.0)),
            full_size=full_size,
        )
    except ValueError as e:
        raise InputError(f"Invalid compressed grid {path}: {e}") from e
