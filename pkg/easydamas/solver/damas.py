"""
DAMAS deconvolution on the full grid or on any retained index subset.
"""

import math
import time

import numpy as np

from easydamas.exceptions import DimensionError, InputError, NumericError, SolverError
from easydamas.models.compression import CompressedGrid
from easydamas.models.geometry import ScanGrid
from easydamas.models.maps import BeamMap, PsfSystem
from easydamas.models.solver import RestrictedSystem, SolveConfig, SolveResult
from easydamas.solver.kernel import gauss_seidel_sweep
from easydamas.utils.logger import get_logger

logger = get_logger(__name__)


def _as_system(matrix: np.ndarray, rhs: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    a = np.ascontiguousarray(matrix, dtype=np.float64)
    b = np.ascontiguousarray(rhs, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionError("system matrix", "square", a.shape)
    if b.shape != (a.shape[0],):
        raise DimensionError("right-hand side length", a.shape[0], b.shape)
    if not np.all(np.isfinite(a)):
        row, col = np.argwhere(~np.isfinite(a))[0]
        raise NumericError(f"system matrix entry A[{row}, {col}] = {a[row, col]} is not finite")
    if not np.all(np.isfinite(b)):
        raise InputError("right-hand side must be finite")
    diag = np.diag(a)
    bad = np.flatnonzero(~(diag > 0))
    if bad.size:
        raise SolverError(f"diagonal entry A[{bad[0]}, {bad[0]}] = {diag[bad[0]]} is not positive")
    return a, b


def damas_solve(matrix: np.ndarray, rhs: np.ndarray, cfg: SolveConfig | None = None) -> SolveResult:
    """
    Solve A x = b subject to x >= 0 with projected Gauss-Seidel sweeps.

    Each sweep visits i in sweep order and sets
    x_i <- max(x_i - (A_i . x - b_i) / A_ii, 0) using the newest values of x.
    ``alternating`` reverses the order on every second sweep. Only the
    sweep itself is timed; the residual ||A x - b|| is recorded afterwards.

    Args:
        matrix: Square system matrix with a positive diagonal.
        rhs: Right-hand side b.
        cfg: Iteration count, sweep mode and optional initial guess.

    Returns:
        SolveResult with the nonnegative solution.

    Raises:
        SolverError: A diagonal entry is zero or negative.
        NumericError: The matrix holds a non-finite entry, or a non-finite value
            appears during the sweeps.
    """
    cfg = cfg or SolveConfig()
    a, b = _as_system(matrix, rhs)

    if cfg.initial_guess is None:
        x = np.zeros_like(b)
    else:
        x = np.array(cfg.initial_guess, dtype=np.float64)
        if x.shape != b.shape:
            raise DimensionError("initial guess length", b.shape[0], x.shape)
        if np.any(x < 0) or not np.all(np.isfinite(x)):
            raise InputError("initial guess must be finite and nonnegative")

    residuals: list[float] = []
    sweep_seconds: list[float] = []
    for sweep in range(cfg.iterations):
        reverse = cfg.sweep_mode == "alternating" and sweep % 2 == 1
        start = time.perf_counter()
        gauss_seidel_sweep(a, b, x, reverse)
        sweep_seconds.append(time.perf_counter() - start)

        if not np.all(np.isfinite(x)):
            raise NumericError(f"non-finite value in the iterate after sweep {sweep + 1}")
        residual = float(np.linalg.norm(a @ x - b))
        if not math.isfinite(residual):
            raise NumericError(f"non-finite residual after sweep {sweep + 1}")
        residuals.append(residual)

    result = SolveResult(
        x=x,
        residuals=residuals,
        sweep_seconds=sweep_seconds,
        iterations=cfg.iterations,
        sweep_mode=cfg.sweep_mode,
    )
    logger.info(
        f"DAMAS solve S={result.size}: {cfg.iterations} {cfg.sweep_mode} sweeps in "
        f"{result.total_seconds:.3f}s ({result.seconds_per_iteration * 1e3:.3f} ms/sweep), "
        f"residual {result.final_residual:.3e}"
    )
    return result


def _keep_indices(keep: CompressedGrid | np.ndarray, full_size: int) -> np.ndarray:
    if isinstance(keep, CompressedGrid):
        if keep.full_size != full_size:
            raise DimensionError("compressed grid size", full_size, keep.full_size)
        return keep.kept
    indices = np.asarray(keep, dtype=np.int64)
    if indices.ndim != 1 or indices.size == 0:
        raise InputError("keep set must be a non-empty 1-D index array")
    if np.any(np.diff(indices) <= 0):
        raise InputError("keep indices must be strictly increasing")
    if indices[0] < 0 or indices[-1] >= full_size:
        raise InputError(f"keep indices must lie in [0, {full_size})")
    return indices


def restrict_system(
    system: PsfSystem, b: BeamMap, keep: CompressedGrid | np.ndarray
) -> RestrictedSystem:
    """Restrict A x = b to the kept points: A[keep, keep] and b[keep]."""
    if b.size != system.size:
        raise DimensionError("beam map length", system.size, b.size)
    indices = _keep_indices(keep, system.size)
    matrix = np.ascontiguousarray(system.matrix[np.ix_(indices, indices)])
    logger.debug(f"Restricted system {system.size} -> {indices.size} points")
    return RestrictedSystem(
        matrix=matrix,
        rhs=b.values[indices].copy(),
        keep=indices,
        full_size=system.size,
    )


def embed_solution(
    x_reduced: np.ndarray, keep: CompressedGrid | np.ndarray, grid: ScanGrid
) -> BeamMap:
    """Scatter a reduced solution back onto the full grid, zeros elsewhere."""
    indices = _keep_indices(keep, grid.size)
    values = np.asarray(x_reduced, dtype=np.float64)
    if values.shape != indices.shape:
        raise DimensionError("reduced solution length", indices.shape[0], values.shape)
    full = np.zeros(grid.size, dtype=np.float64)
    full[indices] = values
    return BeamMap(values=full, grid=grid)
