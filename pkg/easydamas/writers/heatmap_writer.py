"""
Binary PPM heatmaps of scan-grid maps.

Values are shown in dB relative to the map maximum, clipped at
-dynamic_range_db, through a fixed 256-entry "hot" colour table
(black, red, yellow, white). The image is N x N pixels with y pointing up.
"""

from pathlib import Path

import numpy as np
from PIL import Image

from easydamas.exceptions import ConfigurationError, OutputError
from easydamas.models.maps import BeamMap

N_COLOURS = 256


def hot_colormap() -> np.ndarray:
    """(256, 3) uint8 colour table."""
    t = np.arange(N_COLOURS, dtype=np.float64) / (N_COLOURS - 1)
    rgb = np.stack(
        [np.clip(3 * t, 0, 1), np.clip(3 * t - 1, 0, 1), np.clip(3 * t - 2, 0, 1)], axis=1
    )
    return np.round(rgb * 255).astype(np.uint8)


def colour_indices(image: np.ndarray, dynamic_range_db: float) -> np.ndarray:
    """
    Map values to colour indices 0..255.

    Only pixels equal to the maximum reach 255; a map without positive
    values maps to 0 everywhere.
    """
    if not dynamic_range_db > 0:
        raise ConfigurationError("dynamic_range_db must be > 0")
    peak = float(np.max(image)) if image.size else 0.0
    if peak <= 0:
        return np.zeros(image.shape, dtype=np.uint8)
    with np.errstate(divide="ignore", invalid="ignore"):
        level = 10 * np.log10(np.where(image > 0, image / peak, 0.0))
    level = np.clip(np.nan_to_num(level, nan=-dynamic_range_db), -dynamic_range_db, 0.0)
    t = (level + dynamic_range_db) / dynamic_range_db
    return np.clip(np.floor(t * (N_COLOURS - 1)), 0, N_COLOURS - 1).astype(np.uint8)


def render_heatmap(b: BeamMap, path: str | Path, dynamic_range_db: float = 20.0) -> Path:
    """Write ``b`` as a P6 PPM image, one pixel per grid point."""
    indices = colour_indices(b.as_image(), dynamic_range_db)
    pixels = np.ascontiguousarray(np.flipud(hot_colormap()[indices]))
    out = Path(path)
    try:
        out.parent.mkdir(parents=True, exist_ok=True)
        Image.fromarray(pixels).save(out, format="PPM")
    except OSError as e:
        raise OutputError(f"Cannot write heatmap {out}: {e}") from e
    return out
