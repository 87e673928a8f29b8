"""Readers package for EasyDamas."""

from easydamas.readers.text_reader import (
    load_array_layout,
    load_scene,
    read_beam_map,
    read_compressed_grid,
)

__all__ = ["load_array_layout", "load_scene", "read_beam_map", "read_compressed_grid"]
