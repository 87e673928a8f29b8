"""
Configuration management for EasyDamas.

Loads run configuration from environment variables and dotenv-style settings
files. A settings file is a flat KEY=value list; section headers are written
as comment lines (``# [geometry]``) and are ignored by the parser. Uses
Pydantic Settings for validation and type coercion.
"""

import math
from functools import lru_cache
from pathlib import Path
from typing import Any

from pydantic import Field, ValidationError, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from easydamas.exceptions import ConfigurationError
from easydamas.utils.logger import get_logger

logger = get_logger(__name__)

_BLOCK_CONFIG = SettingsConfigDict(
    env_file=".env",
    env_file_encoding="utf-8",
    extra="ignore",
    validate_assignment=True,
)


class GeometryConfig(BaseSettings):
    """
    Array and scan-plane geometry.

    All settings can be overridden via GEOMETRY_* environment variables.
    """

    model_config = _BLOCK_CONFIG

    n_mics: int = Field(default=60, alias="geometry_n_mics", description="Number of microphones M")
    aperture: float = Field(
        default=1.0, alias="geometry_aperture", description="Array aperture diameter D (m)"
    )
    standoff: float = Field(
        default=5.0, alias="geometry_standoff", description="Array to scan plane distance z0 (m)"
    )
    opening_angle_deg: float = Field(
        default=60.0, alias="geometry_opening_angle_deg", description="Opening angle alpha (deg)"
    )
    frequency: float = Field(
        default=3000.0, alias="geometry_frequency", description="Analysis frequency f (Hz)"
    )
    speed_of_sound: float = Field(
        default=340.0, alias="geometry_speed_of_sound", description="Speed of sound c0 (m/s)"
    )
    n_per_side: int = Field(
        default=50, alias="geometry_n_per_side", description="Scan grid points per side N"
    )
    layout_file: str | None = Field(
        default=None,
        alias="geometry_layout_file",
        description="Optional microphone layout file (x y z per line)",
    )
    array_seed: int = Field(
        default=0, alias="geometry_array_seed", description="Seed for the default spiral layout"
    )

    @property
    def opening_angle(self) -> float:
        """Opening angle in radians."""
        return math.radians(self.opening_angle_deg)

    @field_validator("n_mics")
    @classmethod
    def validate_n_mics(cls, v: int) -> int:
        if v < 2:
            raise ValueError("GEOMETRY_N_MICS must be >= 2")
        return v

    @field_validator("n_per_side")
    @classmethod
    def validate_n_per_side(cls, v: int) -> int:
        if v < 2:
            raise ValueError("GEOMETRY_N_PER_SIDE must be >= 2")
        return v

    @field_validator("aperture", "standoff", "frequency", "speed_of_sound")
    @classmethod
    def validate_positive(cls, v: float) -> float:
        if not v > 0:
            raise ValueError("geometry lengths, frequency and speed of sound must be > 0")
        return v

    @field_validator("opening_angle_deg")
    @classmethod
    def validate_opening_angle(cls, v: float) -> float:
        if not 0 < v < 180:
            raise ValueError("GEOMETRY_OPENING_ANGLE_DEG must be in (0, 180)")
        return v

    @field_validator("layout_file")
    @classmethod
    def validate_layout_file(cls, v: str | None) -> str | None:
        if v and not Path(v).is_file():
            raise ValueError(f"GEOMETRY_LAYOUT_FILE not found: {v}")
        return v or None


class SceneConfig(BaseSettings):
    """Source scene selector: a built-in case or a scene file."""

    model_config = _BLOCK_CONFIG

    case_id: int | None = Field(default=1, alias="scene_case", description="Built-in case 1..4")
    scene_file: str | None = Field(
        default=None, alias="scene_file", description="Scene file (row col amplitude_Pa)"
    )

    @field_validator("case_id")
    @classmethod
    def validate_case_id(cls, v: int | None) -> int | None:
        if v is not None and v not in (1, 2, 3, 4):
            raise ValueError("SCENE_CASE must be one of 1, 2, 3, 4")
        return v

    @field_validator("scene_file")
    @classmethod
    def validate_scene_file(cls, v: str | None) -> str | None:
        if v and not Path(v).is_file():
            raise ValueError(f"SCENE_FILE not found: {v}")
        return v or None


class SynthesisConfig(BaseSettings):
    """
    How the dirty map is produced.

    ``ideal`` uses b = A x directly, ``sampled`` draws frames with noise,
    averages a CSM and beamforms it.
    """

    model_config = _BLOCK_CONFIG

    path: str = Field(default="sampled", alias="synth_path", description="ideal or sampled")
    frames: int = Field(default=1000, alias="synth_frames", description="Frames I for the CSM")
    snr_db: float = Field(default=15.0, alias="synth_snr_db", description="SNR at the array (dB)")
    seed: int = Field(default=0, alias="synth_seed", description="Random seed")
    diagonal_removal: bool = Field(
        default=False, alias="synth_diagonal_removal", description="Zero the CSM diagonal"
    )
    random_phase: bool = Field(
        default=True, alias="synth_random_phase", description="Random source phasors per frame"
    )

    @field_validator("path")
    @classmethod
    def validate_path(cls, v: str) -> str:
        if v.lower() not in {"ideal", "sampled"}:
            raise ValueError("SYNTH_PATH must be 'ideal' or 'sampled'")
        return v.lower()

    @field_validator("frames")
    @classmethod
    def validate_frames(cls, v: int) -> int:
        if v < 1:
            raise ValueError("SYNTH_FRAMES must be >= 1")
        return v


class SolverConfig(BaseSettings):
    """DAMAS Gauss-Seidel settings."""

    model_config = _BLOCK_CONFIG

    iterations: int = Field(default=1000, alias="solver_iterations", description="Sweeps")
    sweep: str = Field(default="forward", alias="solver_sweep", description="forward/alternating")

    @field_validator("iterations")
    @classmethod
    def validate_iterations(cls, v: int) -> int:
        if v < 1:
            raise ValueError("SOLVER_ITERATIONS must be >= 1")
        return v

    @field_validator("sweep")
    @classmethod
    def validate_sweep(cls, v: str) -> str:
        if v.lower() not in {"forward", "alternating"}:
            raise ValueError("SOLVER_SWEEP must be 'forward' or 'alternating'")
        return v.lower()


class CompressionConfig(BaseSettings):
    """Wavelet grid compression settings."""

    model_config = _BLOCK_CONFIG

    epsilon: float = Field(default=0.1, alias="compress_epsilon", description="Threshold")
    mode: str = Field(default="relative", alias="compress_mode", description="relative/absolute")
    stencil: str = Field(default="linear", alias="compress_stencil", description="linear/cubic")

    @field_validator("epsilon")
    @classmethod
    def validate_epsilon(cls, v: float) -> float:
        if not v > 0:
            raise ValueError("COMPRESS_EPSILON must be > 0")
        return v

    @field_validator("mode")
    @classmethod
    def validate_mode(cls, v: str) -> str:
        if v.lower() not in {"relative", "absolute"}:
            raise ValueError("COMPRESS_MODE must be 'relative' or 'absolute'")
        return v.lower()

    @field_validator("stencil")
    @classmethod
    def validate_stencil(cls, v: str) -> str:
        if v.lower() not in {"linear", "cubic"}:
            raise ValueError("COMPRESS_STENCIL must be 'linear' or 'cubic'")
        return v.lower()


class OutputConfig(BaseSettings):
    """Artifact output settings."""

    model_config = _BLOCK_CONFIG

    out_dir: str = Field(default="results", alias="output_dir", description="Output directory")
    dynamic_range_db: float = Field(
        default=20.0, alias="output_dynamic_range_db", description="Heatmap dynamic range (dB)"
    )

    @field_validator("dynamic_range_db")
    @classmethod
    def validate_dynamic_range(cls, v: float) -> float:
        if not v > 0:
            raise ValueError("OUTPUT_DYNAMIC_RANGE_DB must be > 0")
        return v


class Settings(BaseSettings):
    """
    Run configuration for a case.

    Top-level values come from plain environment variables; each block reads
    its own prefixed variables from the same settings file.
    """

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
        validate_assignment=True,
    )

    # Logging Configuration
    log_level: str = Field(default="INFO", description="Logging level")
    log_file: str | None = Field(default=None, description="Log file path")

    # Execution
    threads: int = Field(default=1, description="Parallelism width for beamforming and PSF")
    max_matrix_bytes: int = Field(
        default=2 * 1024**3, description="Memory budget for the dense PSF matrix"
    )

    geometry: GeometryConfig = Field(default_factory=GeometryConfig)
    scene: SceneConfig = Field(default_factory=SceneConfig)
    synthesis: SynthesisConfig = Field(default_factory=SynthesisConfig)
    solver: SolverConfig = Field(default_factory=SolverConfig)
    compression: CompressionConfig = Field(default_factory=CompressionConfig)
    output: OutputConfig = Field(default_factory=OutputConfig)

    @field_validator("log_level")
    @classmethod
    def validate_log_level(cls, v: str) -> str:
        """Validate log level is valid."""
        valid_levels = {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}
        upper_v = v.upper()
        if upper_v not in valid_levels:
            raise ValueError(f"LOG_LEVEL must be one of {valid_levels}")
        return upper_v

    @field_validator("threads")
    @classmethod
    def validate_threads(cls, v: int) -> int:
        if v < 1:
            raise ValueError("THREADS must be >= 1")
        return v


RunConfig = Settings

_BLOCKS: dict[str, type[BaseSettings]] = {
    "geometry": GeometryConfig,
    "scene": SceneConfig,
    "synthesis": SynthesisConfig,
    "solver": SolverConfig,
    "compression": CompressionConfig,
    "output": OutputConfig,
}


def _build_settings(env_file: str | Path | None) -> Settings:
    try:
        blocks = {name: cls(_env_file=env_file) for name, cls in _BLOCKS.items()}  # type: ignore[call-arg]
        return Settings(_env_file=env_file, **blocks)  # type: ignore[call-arg, arg-type]
    except ValidationError as e:
        raise ConfigurationError(_format_validation_error(e)) from e


def _format_validation_error(error: ValidationError) -> str:
    parts = [f"{'.'.join(str(p) for p in err['loc'])}: {err['msg']}" for err in error.errors()]
    return "; ".join(parts) or str(error)


@lru_cache
def get_settings() -> Settings:
    """
    Get cached application settings.

    Returns:
        Settings: Application settings instance
    """
    return _build_settings(".env")


def load_settings(env_file: str | Path | None = None) -> Settings:
    """
    Load settings from a specific settings file.

    Args:
        env_file: Path to settings file (optional)

    Returns:
        Settings: Application settings instance
    """
    get_settings.cache_clear()

    if env_file:
        if not Path(env_file).is_file():
            raise ConfigurationError(f"Settings file not found: {env_file}")
        return _build_settings(env_file)
    return get_settings()


def apply_overrides(settings: Settings, overrides: dict[str, Any]) -> Settings:
    """
    Apply dotted-path overrides (e.g. ``{"solver.iterations": 10}``) in place.

    ``None`` values are skipped so unset CLI flags leave file values alone.
    Unknown paths are logged and ignored.
    """
    for path, value in overrides.items():
        if value is None:
            continue
        parts = path.split(".")
        target: Any = settings
        for part in parts[:-1]:
            if not hasattr(target, part):
                logger.warning(f"Skip unknown override path segment: {path}")
                target = None
                break
            target = getattr(target, part)
        if target is None:
            continue

        leaf = parts[-1]
        if leaf not in type(target).model_fields:
            logger.warning(f"Skip unknown override path leaf: {path}")
            continue

        try:
            setattr(target, leaf, value)
        except ValidationError as e:
            raise ConfigurationError(f"{path}: {_format_validation_error(e)}") from e
    return settings
