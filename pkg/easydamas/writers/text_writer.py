"""
Plain-text artifact writers: maps, scenes, layouts, compressed grids and metadata.
"""

import json
from pathlib import Path
from typing import Any

import numpy as np

from easydamas.exceptions import OutputError
from easydamas.models.compression import CompressedGrid
from easydamas.models.geometry import ScanGrid
from easydamas.models.maps import BeamMap
from easydamas.models.scene import SourceScene
from easydamas.models.solver import SolveResult

MAP_FORMAT = "%.10e"


def _prepare(path: str | Path) -> Path:
    out = Path(path)
    try:
        out.parent.mkdir(parents=True, exist_ok=True)
    except OSError as e:
        raise OutputError(f"Cannot create directory for {out}: {e}") from e
    return out


def _write_text(path: Path, text: str) -> Path:
    try:
        path.write_text(text, encoding="utf-8")
    except OSError as e:
        raise OutputError(f"Cannot write {path}: {e}") from e
    return path


def write_beam_map(b: BeamMap, path: str | Path, frequency: float) -> Path:
    """
    Write an N x N comma-separated map, rows in grid-row order.

    Header lines start with '#' and carry N, L, f and the units.
    """
    out = _prepare(path)
    grid = b.grid
    header = "\n".join(
        [
            f"N={grid.n_per_side}",
            f"L={grid.side_length:.10f} m",
            f"f={frequency:g} Hz",
            "units=Pa^2",
        ]
    )
    try:
        np.savetxt(out, b.as_image(), fmt=MAP_FORMAT, delimiter=",", header=header, comments="# ")
    except OSError as e:
        raise OutputError(f"Cannot write {out}: {e}") from e
    return out


def write_scene(scene: SourceScene, grid: ScanGrid, path: str | Path) -> Path:
    """Write the scene as ``row col amplitude_Pa`` lines."""
    out = _prepare(path)
    lines = ["# row col amplitude_Pa"]
    for entry in scene.entries:
        row, col = grid.row_col(entry.index)
        lines.append(f"{row} {col} {entry.amplitude:.6f}")
    return _write_text(out, "\n".join(lines) + "\n")


def write_array_layout(positions: np.ndarray, path: str | Path) -> Path:
    """Write microphone positions as ``x y z`` lines (m)."""
    out = _prepare(path)
    try:
        np.savetxt(out, positions, fmt="%.12f", header="x y z (m)", comments="# ")
    except OSError as e:
        raise OutputError(f"Cannot write {out}: {e}") from e
    return out


def write_compressed_grid(cg: CompressedGrid, grid: ScanGrid, path: str | Path) -> Path:
    """Write ``index row col level`` lines under an epsilon/mode/sigma header."""
    out = _prepare(path)
    lines = [
        f"# epsilon={cg.epsilon:g} mode={cg.mode} sigma={cg.sigma:.6f}",
        f"# stencil={cg.stencil} threshold={cg.threshold:.10e} n_per_side={grid.n_per_side}",
    ]
    rows, cols = np.divmod(cg.kept, grid.n_per_side)
    lines.extend(
        f"{index} {row} {col} {level}"
        for index, row, col, level in zip(cg.kept, rows, cols, cg.levels, strict=True)
    )
    return _write_text(out, "\n".join(lines) + "\n")


def write_solve_metadata(
    result: SolveResult, path: str | Path, extra: dict[str, Any] | None = None
) -> Path:
    """Write the solve metadata block as JSON."""
    out = _prepare(path)
    payload = {**result.metadata(), **(extra or {})}
    return _write_text(out, json.dumps(payload, indent=2) + "\n")


def write_text(text: str, path: str | Path) -> Path:
    return _write_text(_prepare(path), text)
