"""
Microphone array construction.

Builds ArraySetup instances from explicit positions, layout files or the
default multi-arm logarithmic spiral.
"""

import math

import numpy as np
from pydantic import ValidationError

from easydamas.config import GeometryConfig
from easydamas.exceptions import ConfigurationError
from easydamas.models.geometry import ArraySetup
from easydamas.readers.text_reader import load_array_layout
from easydamas.utils.logger import get_logger

logger = get_logger(__name__)

SPIRAL_ARMS = 5
SPIRAL_INNER_FRACTION = 0.1
SPIRAL_ANGLE = math.radians(60.0)


def default_array(n_mics: int, aperture: float, seed: int = 0) -> np.ndarray:
    """
    Deterministic multi-arm logarithmic spiral inside the aperture.

    Microphones are dealt round-robin over up to five arms. Along each arm
    the radius grows geometrically from 10% of the aperture radius to the
    rim, and the polar angle follows r = r0 * exp(theta / tan(psi)). The seed
    only sets a global rotation of the whole pattern.

    Args:
        n_mics: Number of microphones M (>= 2).
        aperture: Aperture diameter D (m).
        seed: Rotation seed.

    Returns:
        (M, 3) positions in the plane z = 0.
    """
    if n_mics < 2:
        raise ConfigurationError("default_array needs at least 2 microphones")
    if not aperture > 0:
        raise ConfigurationError("aperture must be > 0")

    n_arms = min(SPIRAL_ARMS, n_mics)
    per_arm = math.ceil(n_mics / n_arms)
    r_max = aperture / 2
    r_min = SPIRAL_INNER_FRACTION * r_max
    rotation = np.random.default_rng(seed).uniform(0.0, 2 * math.pi)
    spiral_rate = 1.0 / math.tan(SPIRAL_ANGLE)

    positions = np.zeros((n_mics, 3), dtype=np.float64)
    for m in range(n_mics):
        arm, step = m % n_arms, m // n_arms
        if per_arm == 1:
            radius = r_max
        else:
            radius = r_min * (r_max / r_min) ** (step / (per_arm - 1))
        theta = rotation + 2 * math.pi * arm / n_arms + spiral_rate * math.log(radius / r_min)
        positions[m, 0] = radius * math.cos(theta)
        positions[m, 1] = radius * math.sin(theta)

    # keep rounding from pushing rim microphones past the aperture
    radii = np.hypot(positions[:, 0], positions[:, 1])
    over = radii > r_max
    positions[over, :2] *= (r_max / radii[over])[:, None]
    return positions


def build_array_setup(
    mic_positions: np.ndarray,
    aperture: float,
    standoff: float,
    opening_angle: float,
    frequency: float,
    speed_of_sound: float = 340.0,
) -> ArraySetup:
    """Validate and build an ArraySetup, raising ConfigurationError on bad fields."""
    try:
        return ArraySetup(
            mic_positions=np.asarray(mic_positions, dtype=np.float64),
            aperture=aperture,
            standoff=standoff,
            opening_angle=opening_angle,
            frequency=frequency,
            speed_of_sound=speed_of_sound,
        )
    except ValidationError as e:
        raise ConfigurationError(f"Invalid array setup: {e.errors()[0]['msg']}") from e


def array_setup_from_config(config: GeometryConfig) -> ArraySetup:
    """Build the setup described by a GeometryConfig block."""
    if config.layout_file:
        positions = load_array_layout(config.layout_file)
    else:
        positions = default_array(config.n_mics, config.aperture, config.array_seed)
    return build_array_setup(
        positions,
        aperture=config.aperture,
        standoff=config.standoff,
        opening_angle=config.opening_angle,
        frequency=config.frequency,
        speed_of_sound=config.speed_of_sound,
    )
