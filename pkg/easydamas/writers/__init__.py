"""Writers package for EasyDamas."""

from easydamas.writers.heatmap_writer import colour_indices, hot_colormap, render_heatmap
from easydamas.writers.text_writer import (
    write_array_layout,
    write_beam_map,
    write_compressed_grid,
    write_scene,
    write_solve_metadata,
    write_text,
)

__all__ = [
    "colour_indices",
    "hot_colormap",
    "render_heatmap",
    "write_array_layout",
    "write_beam_map",
    "write_compressed_grid",
    "write_scene",
    "write_solve_metadata",
    "write_text",
]
