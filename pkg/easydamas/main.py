"""
EasyDamas CLI Entry Point

Command-line interface for running simulation cases and the individual
beamforming, compression and deconvolution steps.
"""

from pathlib import Path
from typing import Any, NoReturn, Optional

import typer
from rich.console import Console
from rich.table import Table

from easydamas.compression import compress
from easydamas.config import Settings, apply_overrides, load_settings
from easydamas.exceptions import EasyDamasError
from easydamas.metrics import (
    psf_scaling,
    render_report_table,
    render_reports_table,
    sweep_scaling,
)
from easydamas.models.maps import BeamMap
from easydamas.models.report import CaseReport, ScalingRow
from easydamas.models.solver import SolveConfig
from easydamas.pipeline import CasePipeline
from easydamas.readers import read_beam_map, read_compressed_grid
from easydamas.solver import damas_solve, embed_solution, restrict_system
from easydamas.synth import CASE_EPSILONS
from easydamas.utils.logger import setup_logging
from easydamas.writers import (
    render_heatmap,
    write_beam_map,
    write_compressed_grid,
    write_solve_metadata,
)

app = typer.Typer(
    name="easydamas",
    help="EasyDamas - DAMAS deconvolution on wavelet-compressed scan grids",
    add_completion=False,
    no_args_is_help=True,
)
console = Console()

EnvOption = typer.Option(None, "--env", "-e", help="Path to settings file")
VerboseOption = typer.Option(False, "--verbose", "-v", help="Enable verbose logging")
ThreadsOption = typer.Option(None, "--threads", "-t", help="Parallelism width")


def _load(
    env_file: Optional[Path], verbose: bool, overrides: dict[str, Any] | None = None
) -> Settings:
    settings = load_settings(env_file)
    apply_overrides(settings, overrides or {})
    if verbose:
        settings.log_level = "DEBUG"
    setup_logging(level=settings.log_level, log_file=settings.log_file)
    return settings


def _prefer_case(settings: Settings, case: Optional[int], scene: Optional[Path]) -> None:
    """An explicit --case overrides a SCENE_FILE from the settings file."""
    if case is not None and scene is None:
        settings.scene.scene_file = None


def _fail(error: Exception, verbose: bool) -> NoReturn:
    console.print(f"\n[red]{error}[/red]")
    if verbose:
        console.print_exception()
    raise typer.Exit(1)


def _parse_floats(text: Optional[str]) -> list[float]:
    if not text:
        return []
    return [float(part) for part in text.split(",") if part.strip()]


def _parse_ints(text: str) -> list[int]:
    return [int(part) for part in text.split(",") if part.strip()]


@app.command("run-case")
def run_case(
    env_file: Optional[Path] = EnvOption,
    case: Optional[int] = typer.Option(None, "--case", "-c", help="Built-in case 1..4"),
    scene: Optional[Path] = typer.Option(None, "--scene", help="Scene file (row col amplitude)"),
    epsilon: Optional[float] = typer.Option(None, "--epsilon", help="Compression threshold"),
    mode: Optional[str] = typer.Option(None, "--mode", help="relative or absolute threshold"),
    stencil: Optional[str] = typer.Option(None, "--stencil", help="linear or cubic"),
    iterations: Optional[int] = typer.Option(None, "--iterations", "-n", help="DAMAS sweeps"),
    sweep: Optional[str] = typer.Option(None, "--sweep", help="forward or alternating"),
    path: Optional[str] = typer.Option(None, "--path", help="ideal or sampled synthesis"),
    seed: Optional[int] = typer.Option(None, "--seed", help="Random seed"),
    frames: Optional[int] = typer.Option(None, "--frames", help="CSM frames I"),
    n_per_side: Optional[int] = typer.Option(None, "--grid", help="Grid points per side N"),
    threads: Optional[int] = ThreadsOption,
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="Output directory"),
    sweep_epsilon: Optional[str] = typer.Option(
        None, "--sweep-epsilon", help="Comma-separated epsilons for a threshold study"
    ),
    verbose: bool = VerboseOption,
):
    """
    Run one simulation case end to end and write its artifacts.

    Examples:
        easydamas run-case --case 1 --epsilon 0.1
        easydamas run-case --case 4 --sweep-epsilon 0.01,0.05,0.1,0.2
        easydamas run-case --scene sources.txt --path ideal --out results/custom
    """
    overrides = {
        "scene.case_id": case,
        "scene.scene_file": str(scene) if scene else None,
        "compression.epsilon": epsilon,
        "compression.mode": mode,
        "compression.stencil": stencil,
        "solver.iterations": iterations,
        "solver.sweep": sweep,
        "synthesis.path": path,
        "synthesis.seed": seed,
        "synthesis.frames": frames,
        "geometry.n_per_side": n_per_side,
        "threads": threads,
        "output.out_dir": str(out) if out else None,
    }
    try:
        settings = _load(env_file, verbose, overrides)
        _prefer_case(settings, case, scene)
        pipeline = CasePipeline(settings, configure_logging=False)

        epsilons = _parse_floats(sweep_epsilon)
        if epsilons:
            _print_epsilon_sweep(pipeline, epsilons)
            return

        stats = pipeline.run()
    except (EasyDamasError, ValueError) as e:
        _fail(e, verbose)

    if stats.report is not None:
        console.print(render_report_table(stats.report))
    console.print(
        f"\n[green]Wrote {len(stats.artifacts)} artifacts to {settings.output.out_dir}[/green]"
    )


def _print_epsilon_sweep(pipeline: CasePipeline, epsilons: list[float]) -> None:
    rows = pipeline.run_epsilon_sweep(epsilons)
    table = Table(title=f"Threshold study: {pipeline.case_name}")
    table.add_column("ε", style="cyan", justify="right")
    table.add_column("Compression ratio, σ", justify="right", style="green")
    table.add_column("Kept points", justify="right")
    table.add_column("Integrated power", justify="right")
    table.add_column("η", justify="right", style="yellow")
    table.add_column("T2 (s / 1000 itera.)", justify="right")
    for row in rows:
        table.add_row(
            f"{row.epsilon:g}",
            f"{row.sigma:.1f}",
            str(row.kept),
            f"{row.p2:.3f}",
            f"{row.eta2 * 100:.1f}%",
            f"{row.t2:.4f}",
        )
    console.print(table)


@app.command("run-all-cases")
def run_all_cases(
    env_file: Optional[Path] = EnvOption,
    epsilon: Optional[float] = typer.Option(
        None, "--epsilon", help="Threshold for every case (default: per-case value)"
    ),
    path: Optional[str] = typer.Option(None, "--path", help="ideal or sampled synthesis"),
    seed: Optional[int] = typer.Option(None, "--seed", help="Random seed"),
    iterations: Optional[int] = typer.Option(None, "--iterations", "-n", help="DAMAS sweeps"),
    threads: Optional[int] = ThreadsOption,
    out: Path = typer.Option(Path("results"), "--out", "-o", help="Output directory"),
    verbose: bool = VerboseOption,
):
    """
    Run cases 1..4, each into <out>/case<k>/, and print a combined table.
    """
    reports: list[CaseReport] = []
    for case_id, case_epsilon in CASE_EPSILONS.items():
        console.print(f"\n[bold blue]Case {case_id}[/bold blue]")
        try:
            settings = _load(
                env_file,
                verbose,
                {
                    "scene.case_id": case_id,
                    "compression.epsilon": epsilon if epsilon is not None else case_epsilon,
                    "synthesis.path": path,
                    "synthesis.seed": seed,
                    "solver.iterations": iterations,
                    "threads": threads,
                    "output.out_dir": str(out / f"case{case_id}"),
                },
            )
            settings.scene.scene_file = None
            stats = CasePipeline(settings, configure_logging=False).run()
        except (EasyDamasError, ValueError) as e:
            _fail(e, verbose)
            return
        if stats.report is not None:
            reports.append(stats.report)

    console.print(render_reports_table(reports))
    console.print(f"\n[green]All cases written to {out}[/green]")


@app.command()
def beamform(
    env_file: Optional[Path] = EnvOption,
    case: Optional[int] = typer.Option(None, "--case", "-c", help="Built-in case 1..4"),
    scene: Optional[Path] = typer.Option(None, "--scene", help="Scene file (row col amplitude)"),
    path: Optional[str] = typer.Option(None, "--path", help="ideal or sampled synthesis"),
    seed: Optional[int] = typer.Option(None, "--seed", help="Random seed"),
    threads: Optional[int] = ThreadsOption,
    out: Path = typer.Option(Path("results"), "--out", "-o", help="Output directory"),
    verbose: bool = VerboseOption,
):
    """
    Simulate the beamformer map of a scene and write beamform.csv / beamform.ppm.
    """
    try:
        settings = _load(
            env_file,
            verbose,
            {
                "scene.case_id": case,
                "scene.scene_file": str(scene) if scene else None,
                "synthesis.path": path,
                "synthesis.seed": seed,
                "threads": threads,
            },
        )
        _prefer_case(settings, case, scene)
        pipeline = CasePipeline(settings, configure_logging=False)
        b = pipeline.dirty_map
        spacing = pipeline.spacing
        csv_path = write_beam_map(b, out / "beamform.csv", settings.geometry.frequency)
        ppm_path = render_heatmap(b, out / "beamform.ppm", settings.output.dynamic_range_db)
    except (EasyDamasError, ValueError) as e:
        _fail(e, verbose)

    row, col = b.peak_row_col
    console.print(f"Peak at grid ({row}, {col}), value {b.values.max():.4e} Pa^2")
    console.print(f"dx/B = {spacing.ratio:.3f}")
    console.print(f"[green]Wrote {csv_path} and {ppm_path}[/green]")


@app.command("compress")
def compress_command(
    beam_map: Path = typer.Argument(..., help="Beamformer map CSV"),
    env_file: Optional[Path] = EnvOption,
    epsilon: Optional[float] = typer.Option(None, "--epsilon", help="Compression threshold"),
    mode: Optional[str] = typer.Option(None, "--mode", help="relative or absolute threshold"),
    stencil: Optional[str] = typer.Option(None, "--stencil", help="linear or cubic"),
    out: Path = typer.Option(
        Path("results/compressed_grid.txt"), "--out", "-o", help="Compressed grid file"
    ),
    verbose: bool = VerboseOption,
):
    """
    Compress the scan grid of a beamformer map.
    """
    try:
        settings = _load(
            env_file,
            verbose,
            {
                "compression.epsilon": epsilon,
                "compression.mode": mode,
                "compression.stencil": stencil,
            },
        )
        grid = CasePipeline(settings, configure_logging=False).grid
        b = read_beam_map(beam_map, grid)
        cfg = settings.compression
        cg = compress(b, cfg.epsilon, mode=cfg.mode, stencil=cfg.stencil)
        written = write_compressed_grid(cg, grid, out)
    except (EasyDamasError, ValueError) as e:
        _fail(e, verbose)

    console.print(f"Kept {cg.size} of {grid.size} points, sigma = {cg.sigma:.2f}")
    console.print(f"[green]Wrote {written}[/green]")


@app.command()
def solve(
    beam_map: Path = typer.Argument(..., help="Beamformer map CSV"),
    env_file: Optional[Path] = EnvOption,
    grid_file: Optional[Path] = typer.Option(
        None, "--grid-file", help="Compressed grid file (solve on the kept points only)"
    ),
    iterations: Optional[int] = typer.Option(None, "--iterations", "-n", help="DAMAS sweeps"),
    sweep: Optional[str] = typer.Option(None, "--sweep", help="forward or alternating"),
    threads: Optional[int] = ThreadsOption,
    out: Path = typer.Option(Path("results"), "--out", "-o", help="Output directory"),
    verbose: bool = VerboseOption,
):
    """
    Run DAMAS on a beamformer map and write damas.csv, damas.ppm and solve.json.
    """
    try:
        settings = _load(
            env_file,
            verbose,
            {"solver.iterations": iterations, "solver.sweep": sweep, "threads": threads},
        )
        pipeline = CasePipeline(settings, configure_logging=False)
        b = read_beam_map(beam_map, pipeline.grid)
        psf = pipeline.psf
        cfg = SolveConfig(iterations=settings.solver.iterations, sweep_mode=settings.solver.sweep)
        if grid_file is not None:
            cg = read_compressed_grid(grid_file, pipeline.grid.size)
            reduced = restrict_system(psf, b, cg)
            result = damas_solve(reduced.matrix, reduced.rhs, cfg)
            x = embed_solution(result.x, cg, pipeline.grid)
        else:
            result = damas_solve(psf.matrix, b.values, cfg)
            x = BeamMap(values=result.x, grid=pipeline.grid)
        write_beam_map(x, out / "damas.csv", settings.geometry.frequency)
        render_heatmap(x, out / "damas.ppm", settings.output.dynamic_range_db)
        write_solve_metadata(result, out / "solve.json")
    except (EasyDamasError, ValueError) as e:
        _fail(e, verbose)

    console.print(
        f"S~={result.size}: {result.seconds_per_iteration * 1e3:.3f} ms/sweep, "
        f"residual {result.final_residual:.3e}, integrated power {x.total():.4f}"
    )
    console.print(f"[green]Wrote results to {out}[/green]")


def _scaling_table(title: str, rows: list[ScalingRow], unit_scale: float, unit: str) -> Table:
    table = Table(title=title)
    table.add_column("Size", style="cyan", justify="right")
    table.add_column(f"Median ({unit})", justify="right", style="green")
    table.add_column(f"Min ({unit})", justify="right")
    table.add_column(f"Max ({unit})", justify="right")
    table.add_column("Ratio to previous", justify="right", style="yellow")
    for row in rows:
        table.add_row(
            str(row.size),
            f"{row.stats.median * unit_scale:.3f}",
            f"{row.stats.min * unit_scale:.3f}",
            f"{row.stats.max * unit_scale:.3f}",
            f"{row.ratio_to_previous:.2f}" if row.ratio_to_previous is not None else "-",
        )
    return table


@app.command()
def bench(
    env_file: Optional[Path] = EnvOption,
    sizes: str = typer.Option("625,1250,2500", "--sizes", help="Dense system sizes"),
    repeats: int = typer.Option(5, "--repeats", "-r", help="Timed runs per size"),
    seed: Optional[int] = typer.Option(None, "--seed", help="Random seed"),
    psf_sides: Optional[str] = typer.Option(
        None, "--psf-sides", help="Grid sides N for PSF assembly timing"
    ),
    threads: Optional[int] = ThreadsOption,
    verbose: bool = VerboseOption,
):
    """
    Measure DAMAS sweep and PSF assembly scaling.
    """
    try:
        settings = _load(env_file, verbose, {"threads": threads, "synthesis.seed": seed})
        sweep_rows = sweep_scaling(
            _parse_ints(sizes), repeats=repeats, seed=settings.synthesis.seed
        )
        console.print(_scaling_table("DAMAS sweep", sweep_rows, 1e3, "ms"))
        if psf_sides:
            setup = CasePipeline(settings, configure_logging=False).setup
            psf_rows = psf_scaling(
                setup, _parse_ints(psf_sides), repeats=repeats, threads=settings.threads
            )
            console.print(_scaling_table("PSF assembly", psf_rows, 1.0, "s"))
    except (EasyDamasError, ValueError) as e:
        _fail(e, verbose)


@app.command()
def render(
    beam_map: Path = typer.Argument(..., help="Map CSV"),
    env_file: Optional[Path] = EnvOption,
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="PPM file"),
    dynamic_range: Optional[float] = typer.Option(
        None, "--dynamic-range", help="Dynamic range (dB)"
    ),
    verbose: bool = VerboseOption,
):
    """
    Render a map CSV as a PPM heatmap.
    """
    try:
        settings = _load(env_file, verbose, {"output.dynamic_range_db": dynamic_range})
        grid = CasePipeline(settings, configure_logging=False).grid
        b = read_beam_map(beam_map, grid)
        written = render_heatmap(
            b, out or beam_map.with_suffix(".ppm"), settings.output.dynamic_range_db
        )
    except (EasyDamasError, ValueError) as e:
        _fail(e, verbose)
    console.print(f"[green]Wrote {written}[/green]")


@app.command()
def config(
    env_file: Optional[Path] = EnvOption,
):
    """
    Show current configuration.
    """
    try:
        settings = load_settings(env_file)
    except EasyDamasError as e:
        _fail(e, False)

    console.print("\n[bold blue]EasyDamas Configuration[/bold blue]")
    console.print("-" * 40)
    console.print(f"  Log level: {settings.log_level}")
    console.print(f"  Threads: {settings.threads}")
    console.print(f"  Matrix budget: {settings.max_matrix_bytes / 2**30:.2f} GiB")

    blocks = {
        "Geometry": settings.geometry,
        "Scene": settings.scene,
        "Synthesis": settings.synthesis,
        "Solver": settings.solver,
        "Compression": settings.compression,
        "Output": settings.output,
    }
    for title, block in blocks.items():
        console.print(f"\n[cyan]{title}:[/cyan]")
        for name, value in block.model_dump().items():
            console.print(f"  {name}: {value}")


@app.command()
def version():
    """
    Show version information.
    """
    from easydamas import __version__

    console.print(f"EasyDamas version: [green]{__version__}[/green]")


def main():
    """Main entry point."""
    app()


if __name__ == "__main__":
    main()
