"""
Wall-clock benchmarks for the DAMAS sweep and the PSF assembly.
"""

import statistics
import time
from collections.abc import Callable
from typing import Any

import numpy as np

from easydamas.beamform.das import psf_matrix
from easydamas.beamform.steering import steering
from easydamas.exceptions import ConfigurationError
from easydamas.geometry.grid import build_scan_grid
from easydamas.models.geometry import ArraySetup
from easydamas.models.report import BenchStats, ScalingRow
from easydamas.solver.kernel import gauss_seidel_sweep
from easydamas.utils.logger import get_logger

logger = get_logger(__name__)


def bench(task: Callable[[], Any], repeats: int = 5, warmup: bool = True) -> BenchStats:
    """
    Time ``task`` ``repeats`` times with ``time.perf_counter``.

    One warm-up call runs first and is not counted.
    """
    if repeats < 1:
        raise ConfigurationError("repeats must be >= 1")
    if warmup:
        task()
    samples = []
    for _ in range(repeats):
        start = time.perf_counter()
        task()
        samples.append(time.perf_counter() - start)
    return BenchStats(
        median=statistics.median(samples),
        min=min(samples),
        max=max(samples),
        repeats=repeats,
    )


def random_system(size: int, seed: int = 0) -> tuple[np.ndarray, np.ndarray]:
    """Dense symmetric, diagonally dominant system with a nonnegative solution."""
    rng = np.random.default_rng(seed)
    raw = rng.uniform(0.0, 1.0, (size, size))
    matrix = np.ascontiguousarray(0.5 * (raw + raw.T))
    matrix[np.diag_indices(size)] += size
    x_true = rng.uniform(0.0, 1.0, size)
    return matrix, matrix @ x_true


def _bench_sweep(size: int, seed: int, repeats: int) -> BenchStats:
    matrix, rhs = random_system(size, seed)
    x = np.zeros(size)
    return bench(lambda: gauss_seidel_sweep(matrix, rhs, x, False), repeats=repeats)


def _bench_psf(setup: ArraySetup, n: int, repeats: int, threads: int) -> BenchStats:
    grid = build_scan_grid(setup, n)
    steer = steering(setup, grid, threads=threads)
    return bench(lambda: psf_matrix(setup, grid, steer, threads=threads), repeats=repeats)


def _with_ratios(rows: list[tuple[int, BenchStats]]) -> list[ScalingRow]:
    result: list[ScalingRow] = []
    for k, (size, stats) in enumerate(rows):
        ratio = stats.median / rows[k - 1][1].median if k else None
        result.append(ScalingRow(size=size, stats=stats, ratio_to_previous=ratio))
    return result


def sweep_scaling(sizes: list[int], repeats: int = 5, seed: int = 0) -> list[ScalingRow]:
    """
    Median single-sweep time on dense random systems for each size.

    Sizes are typically successive doublings, where a ratio near 4 reflects
    the O(S^2) cost of a sweep.
    """
    timed: list[tuple[int, BenchStats]] = []
    for size in sizes:
        stats = _bench_sweep(size, seed, repeats)
        logger.info(f"Sweep S={size}: median {stats.median * 1e3:.3f} ms")
        timed.append((size, stats))
    return _with_ratios(timed)


def psf_scaling(
    setup: ArraySetup, sides: list[int], repeats: int = 3, threads: int = 1
) -> list[ScalingRow]:
    """Median PSF assembly time for each grid side N (size reported as S = N^2)."""
    timed: list[tuple[int, BenchStats]] = []
    for n in sides:
        stats = _bench_psf(setup, n, repeats, threads)
        logger.info(f"PSF S={n * n}: median {stats.median:.3f} s")
        timed.append((n * n, stats))
    return _with_ratios(timed)
