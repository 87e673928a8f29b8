"""Metrics and reporting for EasyDamas."""

from easydamas.metrics.power import (
    attribute_to_sources,
    integrated_power,
    power_error,
)
from easydamas.metrics.report import (
    build_case_report,
    render_report_table,
    render_reports_table,
    report_text,
)
from easydamas.metrics.sweeps import epsilon_sweep
from easydamas.metrics.timing import bench, psf_scaling, random_system, sweep_scaling

__all__ = [
    "attribute_to_sources",
    "bench",
    "build_case_report",
    "epsilon_sweep",
    "integrated_power",
    "power_error",
    "psf_scaling",
    "random_system",
    "render_report_table",
    "render_reports_table",
    "report_text",
    "sweep_scaling",
]
