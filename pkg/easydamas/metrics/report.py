"""
Case report assembly and rendering.

Powers are raw sums of the deconvolved maps; times are per 1000 sweeps.
"""

import io

from rich.console import Console
from rich.table import Table

from easydamas.metrics.power import attribute_to_sources, integrated_power, power_error
from easydamas.models.compression import CompressedGrid
from easydamas.models.geometry import ArraySetup
from easydamas.models.maps import BeamMap
from easydamas.models.report import CaseReport
from easydamas.models.scene import SourceScene
from easydamas.models.solver import SolveResult

SWEEPS_PER_REPORT = 1000


def build_case_report(
    case: str,
    setup: ArraySetup,
    scene: SourceScene,
    x_full: BeamMap,
    x_compressed: BeamMap,
    full_solve: SolveResult,
    compressed_solve: SolveResult,
    cg: CompressedGrid,
    compression_time: float,
    beamwidth: float,
    spacing_ratio: float,
    attribution_radius: float | None = None,
) -> CaseReport:
    """
    Assemble the report of one case from its solves and compression.

    Per-source attribution uses discs of ``attribution_radius`` (B / 2 by
    default) around the true sources.
    """
    radius = attribution_radius or beamwidth / 2
    p0 = scene.total_power
    p1 = integrated_power(x_full)
    p2 = integrated_power(x_compressed)
    t1 = full_solve.seconds_per_iteration * SWEEPS_PER_REPORT
    t2 = compressed_solve.seconds_per_iteration * SWEEPS_PER_REPORT
    return CaseReport(
        case=case,
        frequency=setup.frequency,
        scan_length=x_full.grid.side_length,
        beamwidth=beamwidth,
        spacing_ratio=spacing_ratio,
        n_points=x_full.size,
        n_mics=setup.n_mics,
        p0=p0,
        p1=p1,
        p2=p2,
        eta1=power_error(p0, p1),
        eta2=power_error(p0, p2),
        epsilon=cg.epsilon,
        mode=cg.mode,
        stencil=cg.stencil,
        kept=cg.size,
        sigma=cg.sigma,
        t1=t1,
        t2=t2,
        compression_time=compression_time,
        efficiency_gain=(t1 - t2) / t1 if t1 > 0 else 0.0,
        peak_full=x_full.peak_row_col,
        peak_compressed=x_compressed.peak_row_col,
        attribution_full=attribute_to_sources(x_full, scene, radius),
        attribution_compressed=attribute_to_sources(x_compressed, scene, radius),
    )


def _report_rows(report: CaseReport) -> list[tuple[str, str]]:
    return [
        ("Frequency, f (kHz)", f"{report.frequency / 1000:g}"),
        ("Scanning length (m)", f"{report.scan_length:.2f}"),
        ("Beamformer resolution (m)", f"{report.beamwidth:.2f}"),
        ("Δx/B", f"{report.spacing_ratio:.2f}"),
        ("Number of original grid points", f"{report.n_points}"),
        ("Set source power (Pa)", f"{report.p0:.3f}"),
        ("Integrated source power on original grid (Pa)", f"{report.p1:.3f}"),
        ("Error of integ. source power on ori. grid, η", f"{report.eta1 * 100:.1f}%"),
        ("ε", f"{report.epsilon:g} ({report.mode})"),
        ("Number of compression grid points", f"{report.kept}"),
        ("Compression ratio, σ", f"{report.sigma:.1f}"),
        ("Integrated source power on compression grid (Pa)", f"{report.p2:.3f}"),
        ("Error of integ. source power on com. grid, η", f"{report.eta2 * 100:.1f}%"),
        ("Run time on original grid after 1000 itera. (s)", f"{report.t1:.3f}"),
        ("Run time on compression grid after 1000 itera. (s)", f"{report.t2:.4f}"),
        ("Compression time (s)", f"{report.compression_time:.4f}"),
        ("Efficiency increasing", f"{report.efficiency_gain * 100:.1f}%"),
        ("Peak on original grid (row, col)", f"{report.peak_full}"),
        ("Peak on compression grid (row, col)", f"{report.peak_compressed}"),
    ]


def render_report_table(report: CaseReport) -> Table:
    """Rich table of one case report."""
    table = Table(title=f"Case report: {report.case}")
    table.add_column("Quantity", style="cyan")
    table.add_column("Value", justify="right", style="green")
    for name, value in _report_rows(report):
        table.add_row(name, value)

    for label, attribution in (
        ("original", report.attribution_full),
        ("compression", report.attribution_compressed),
    ):
        for source in attribution.sources:
            table.add_row(
                f"Source ({source.row}, {source.col}) power on {label} grid",
                f"{source.attributed_power:.3f} / {source.set_power:.3f}",
            )
        table.add_row(f"Unassigned power on {label} grid", f"{attribution.unassigned:.3f}")
    return table


def render_reports_table(reports: list[CaseReport]) -> Table:
    """Side-by-side table of several case reports."""
    table = Table(title="Simulation cases")
    table.add_column("Quantity", style="cyan")
    for report in reports:
        table.add_column(report.case, justify="right", style="green")
    rows = [_report_rows(r) for r in reports]
    for k, (name, _) in enumerate(rows[0] if rows else []):
        table.add_row(name, *(r[k][1] for r in rows))
    return table


def report_text(report: CaseReport, width: int = 100) -> str:
    """Aligned plain-text rendering of the report table."""
    buffer = io.StringIO()
    console = Console(file=buffer, width=width, color_system=None, force_terminal=False)
    console.print(render_report_table(report))
    return buffer.getvalue()
