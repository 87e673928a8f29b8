"""
Case pipeline for EasyDamas.

Orchestrates one simulation case from geometry to report: steering and PSF
assembly, dirty map synthesis, wavelet compression, DAMAS on the original
and compressed grids, and the artifact files.
"""

import time
from collections.abc import Iterator
from contextlib import contextmanager
from dataclasses import dataclass, field
from pathlib import Path

from easydamas.beamform import psf_matrix, steering
from easydamas.compression import compress
from easydamas.config import Settings
from easydamas.exceptions import StageError
from easydamas.geometry import (
    array_setup_from_config,
    build_scan_grid,
    rayleigh_beamwidth,
    spacing_ratio,
)
from easydamas.metrics import build_case_report, epsilon_sweep, report_text
from easydamas.models.compression import CompressedGrid
from easydamas.models.geometry import ArraySetup, ScanGrid, SpacingCheck
from easydamas.models.maps import BeamMap, PsfSystem, SteeringSet
from easydamas.models.report import CaseReport, EpsilonSweepRow
from easydamas.models.scene import SourceScene
from easydamas.models.solver import SolveConfig, SolveResult
from easydamas.readers import load_scene
from easydamas.solver import damas_solve, embed_solution, restrict_system
from easydamas.synth import builtin_case, simulate_dirty_map
from easydamas.utils.logger import get_logger, setup_logging
from easydamas.writers import (
    render_heatmap,
    write_beam_map,
    write_compressed_grid,
    write_solve_metadata,
    write_text,
)

logger = get_logger(__name__)

ARTIFACTS = (
    "beamform.csv",
    "damas_full.csv",
    "compressed_grid.txt",
    "damas_compressed.csv",
    "beamform.ppm",
    "damas_full.ppm",
    "damas_compressed.ppm",
    "solve_full.json",
    "solve_compressed.json",
    "report.txt",
    "report.json",
)


@dataclass
class CaseStats:
    """Statistics from one case run."""

    case: str = ""
    stage_seconds: dict[str, float] = field(default_factory=dict)
    artifacts: list[str] = field(default_factory=list)
    errors: list[str] = field(default_factory=list)
    report: CaseReport | None = None

    def to_dict(self) -> dict:
        return {
            "case": self.case,
            "stage_seconds": self.stage_seconds,
            "artifacts": self.artifacts,
            "errors": self.errors,
            "report": self.report.to_dict() if self.report else None,
        }


class CasePipeline:
    """
    Pipeline for one simulation case.

    Orchestrates:
    1. Geometry (array, scan grid, beamwidth, spacing check)
    2. Steering vectors and PSF matrix
    3. Dirty map synthesis (ideal or sampled path)
    4. Wavelet compression of the scan grid
    5. DAMAS on the original and the compressed grid
    6. Report and artifact files
    """

    def __init__(self, settings: Settings, configure_logging: bool = True):
        self.settings = settings
        self._setup: ArraySetup | None = None
        self._grid: ScanGrid | None = None
        self._scene: SourceScene | None = None
        self._steer: SteeringSet | None = None
        self._psf: PsfSystem | None = None
        self._dirty_map: BeamMap | None = None
        self._stats = CaseStats()

        if configure_logging:
            setup_logging(
                level=settings.log_level,
                log_file=settings.log_file,
            )

    @contextmanager
    def _stage(self, name: str) -> Iterator[None]:
        start = time.perf_counter()
        try:
            yield
        except StageError:
            raise
        except Exception as e:
            error = StageError(name, e)
            logger.error(str(error))
            self._stats.errors.append(str(error))
            raise error from e
        finally:
            self._stats.stage_seconds[name] = (
                self._stats.stage_seconds.get(name, 0.0) + time.perf_counter() - start
            )

    @property
    def setup(self) -> ArraySetup:
        if self._setup is None:
            with self._stage("geometry"):
                self._setup = array_setup_from_config(self.settings.geometry)
        return self._setup

    @property
    def grid(self) -> ScanGrid:
        if self._grid is None:
            with self._stage("geometry"):
                self._grid = build_scan_grid(self.setup, self.settings.geometry.n_per_side)
        return self._grid

    @property
    def beamwidth(self) -> float:
        return rayleigh_beamwidth(self.setup)

    @property
    def spacing(self) -> SpacingCheck:
        return spacing_ratio(self.grid, self.beamwidth)

    @property
    def scene(self) -> SourceScene:
        if self._scene is None:
            with self._stage("synthesis"):
                scene_cfg = self.settings.scene
                frequency = self.settings.geometry.frequency
                if scene_cfg.scene_file:
                    self._scene = load_scene(scene_cfg.scene_file, self.grid, frequency)
                else:
                    self._scene = builtin_case(
                        scene_cfg.case_id or 1, self.grid.n_per_side, frequency
                    )
        return self._scene

    @property
    def case_name(self) -> str:
        return self.scene.name or "scene"

    @property
    def steer(self) -> SteeringSet:
        if self._steer is None:
            with self._stage("beamform"):
                self._steer = steering(self.setup, self.grid, threads=self.settings.threads)
        return self._steer

    @property
    def psf(self) -> PsfSystem:
        if self._psf is None:
            with self._stage("psf"):
                self._psf = psf_matrix(
                    self.setup,
                    self.grid,
                    self.steer,
                    threads=self.settings.threads,
                    diagonal_removed=self.settings.synthesis.diagonal_removal,
                    max_matrix_bytes=self.settings.max_matrix_bytes,
                )
        return self._psf

    @property
    def dirty_map(self) -> BeamMap:
        if self._dirty_map is None:
            synth = self.settings.synthesis
            psf = self.psf if synth.path == "ideal" else None
            with self._stage("synthesis"):
                self._dirty_map = simulate_dirty_map(
                    self.scene,
                    self.setup,
                    self.steer,
                    psf=psf,
                    path=synth.path,  # type: ignore[arg-type]
                    frames=synth.frames,
                    snr_db=synth.snr_db,
                    seed=synth.seed,
                    diagonal_removal=synth.diagonal_removal,
                    random_phase=synth.random_phase,
                    threads=self.settings.threads,
                )
        return self._dirty_map

    @property
    def solve_config(self) -> SolveConfig:
        return SolveConfig(
            iterations=self.settings.solver.iterations,
            sweep_mode=self.settings.solver.sweep,  # type: ignore[arg-type]
        )

    def compress(self) -> tuple[CompressedGrid, float]:
        """Compressed grid of the dirty map and the seconds it took."""
        cfg = self.settings.compression
        b = self.dirty_map
        with self._stage("compress"):
            start = time.perf_counter()
            cg = compress(b, cfg.epsilon, mode=cfg.mode, stencil=cfg.stencil)
            return cg, time.perf_counter() - start

    def solve_full(self) -> SolveResult:
        psf, b = self.psf, self.dirty_map
        with self._stage("solve"):
            return damas_solve(psf.matrix, b.values, self.solve_config)

    def solve_compressed(self, cg: CompressedGrid) -> SolveResult:
        psf, b = self.psf, self.dirty_map
        with self._stage("solve"):
            reduced = restrict_system(psf, b, cg)
            return damas_solve(reduced.matrix, reduced.rhs, self.solve_config)

    def run(self, out_dir: str | Path | None = None, write_artifacts: bool = True) -> CaseStats:
        """
        Run the complete case.

        Raises:
            StageError: Any stage failed; the message carries the stage tag.
        """
        stats = self._stats
        stats.case = self.case_name
        logger.info(
            f"Starting {stats.case}: M={self.setup.n_mics}, N={self.grid.n_per_side}, "
            f"S={self.grid.size}, path={self.settings.synthesis.path}"
        )
        spacing = self.spacing

        cg, compression_time = self.compress()
        full = self.solve_full()
        compressed = self.solve_compressed(cg)

        with self._stage("report"):
            x_full = BeamMap(values=full.x, grid=self.grid)
            x_compressed = embed_solution(compressed.x, cg, self.grid)
            stats.report = build_case_report(
                stats.case,
                self.setup,
                self.scene,
                x_full,
                x_compressed,
                full,
                compressed,
                cg,
                compression_time=compression_time,
                beamwidth=self.beamwidth,
                spacing_ratio=spacing.ratio,
            )

        if write_artifacts:
            out = Path(out_dir or self.settings.output.out_dir)
            self._write_artifacts(out, cg, x_full, x_compressed, full, compressed, stats)

        self._log_summary(stats)
        return stats

    def run_epsilon_sweep(self, epsilons: list[float]) -> list[EpsilonSweepRow]:
        """Compression/solve study over several thresholds on this case's dirty map."""
        cfg = self.settings.compression
        psf, b = self.psf, self.dirty_map
        with self._stage("compress"):
            return epsilon_sweep(
                b,
                psf,
                self.scene.total_power,
                epsilons,
                mode=cfg.mode,
                stencil=cfg.stencil,
                solve_config=self.solve_config,
            )

    def _write_artifacts(
        self,
        out: Path,
        cg: CompressedGrid,
        x_full: BeamMap,
        x_compressed: BeamMap,
        full: SolveResult,
        compressed: SolveResult,
        stats: CaseStats,
    ) -> None:
        frequency = self.setup.frequency
        dynamic_range = self.settings.output.dynamic_range_db
        maps = {
            "beamform": self.dirty_map,
            "damas_full": x_full,
            "damas_compressed": x_compressed,
        }
        written: list[Path] = []

        with self._stage("write"):
            for name, beam_map in maps.items():
                written.append(write_beam_map(beam_map, out / f"{name}.csv", frequency))
            written.append(write_compressed_grid(cg, self.grid, out / "compressed_grid.txt"))
            written.append(write_solve_metadata(full, out / "solve_full.json", {"grid": "full"}))
            written.append(
                write_solve_metadata(
                    compressed, out / "solve_compressed.json", {"grid": "compressed"}
                )
            )

        with self._stage("render"):
            for name, beam_map in maps.items():
                written.append(render_heatmap(beam_map, out / f"{name}.ppm", dynamic_range))

        if stats.report is not None:
            with self._stage("report"):
                written.append(write_text(report_text(stats.report), out / "report.txt"))
                written.append(
                    write_text(stats.report.to_json(indent=2) + "\n", out / "report.json")
                )

        stats.artifacts = sorted(str(p) for p in written)
        logger.info(f"Wrote {len(written)} artifacts to {out}")

    def _log_summary(self, stats: CaseStats) -> None:
        report = stats.report
        logger.info("=" * 60)
        logger.info(f"Case Summary: {stats.case}")
        logger.info("=" * 60)
        if report is not None:
            logger.info(f"Set power P0:              {report.p0:.4f}")
            logger.info(f"Original grid P1 / eta1:   {report.p1:.4f} / {report.eta1 * 100:.2f}%")
            logger.info(f"Compressed grid P2 / eta2: {report.p2:.4f} / {report.eta2 * 100:.2f}%")
            logger.info(f"Kept points / sigma:       {report.kept} / {report.sigma:.2f}")
            logger.info(f"T1 / T2 (s per 1000):      {report.t1:.3f} / {report.t2:.4f}")
            logger.info(f"Compression time (s):      {report.compression_time:.4f}")
            logger.info(f"Efficiency increasing:     {report.efficiency_gain * 100:.1f}%")
        for stage, seconds in stats.stage_seconds.items():
            logger.info(f"Stage {stage:<10} {seconds:.3f}s")
        if stats.errors:
            logger.warning(f"Errors: {len(stats.errors)}")
            for error in stats.errors:
                logger.warning(f"  - {error}")
        logger.info("=" * 60)
