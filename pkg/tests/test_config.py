from pathlib import Path

import pytest

from easydamas.config import (
    GeometryConfig,
    Settings,
    apply_overrides,
    get_settings,
    load_settings,
)
from easydamas.exceptions import ConfigurationError


@pytest.fixture(autouse=True)
def _isolated_cwd(tmp_path: Path, monkeypatch) -> None:
    monkeypatch.chdir(tmp_path)
    get_settings.cache_clear()


def _write_env(path: Path, body: str) -> Path:
    path.write_text(body, encoding="utf-8")
    return path


def test_defaults_without_settings_file() -> None:
    settings = load_settings()

    assert isinstance(settings, Settings)
    assert settings.log_level == "INFO"
    assert settings.threads == 1
    assert settings.geometry.n_mics == 60
    assert settings.geometry.n_per_side == 50
    assert settings.geometry.frequency == 3000.0
    assert settings.scene.case_id == 1
    assert settings.synthesis.path == "sampled"
    assert settings.synthesis.snr_db == 15.0
    assert settings.solver.iterations == 1000
    assert settings.solver.sweep == "forward"
    assert settings.compression.epsilon == 0.1
    assert settings.compression.mode == "relative"
    assert settings.compression.stencil == "linear"


def test_settings_file_with_section_headers(tmp_path: Path) -> None:
    env = _write_env(
        tmp_path / "case.env",
        "# [geometry]\n"
        "GEOMETRY_N_PER_SIDE=20\n"
        "GEOMETRY_FREQUENCY=2000\n"
        "# [solver]\n"
        "SOLVER_ITERATIONS=5\n"
        "SOLVER_SWEEP=Alternating\n"
        "# [compression]\n"
        "COMPRESS_EPSILON=0.05\n"
        "THREADS=2\n",
    )

    settings = load_settings(env)

    assert settings.geometry.n_per_side == 20
    assert settings.geometry.frequency == 2000.0
    assert settings.solver.iterations == 5
    assert settings.solver.sweep == "alternating"
    assert settings.compression.epsilon == 0.05
    assert settings.threads == 2


def test_environment_variables_are_read(monkeypatch) -> None:
    monkeypatch.setenv("SYNTH_PATH", "ideal")
    monkeypatch.setenv("SCENE_CASE", "3")

    settings = load_settings()

    assert settings.synthesis.path == "ideal"
    assert settings.scene.case_id == 3


def test_unprefixed_shell_variables_are_ignored(monkeypatch) -> None:
    monkeypatch.setenv("PATH", "/opt/cargo/bin:/usr/local/bin:/usr/bin:/bin")
    monkeypatch.setenv("MODE", "percent")
    monkeypatch.setenv("SEED", "not-a-number")
    monkeypatch.setenv("FRAMES", "0")

    settings = load_settings()

    assert settings.synthesis.path == "sampled"
    assert settings.synthesis.seed == 0
    assert settings.synthesis.frames == 1000
    assert settings.compression.mode == "relative"


def test_missing_settings_file_is_a_configuration_error(tmp_path: Path) -> None:
    with pytest.raises(ConfigurationError, match="not found"):
        load_settings(tmp_path / "absent.env")


@pytest.mark.parametrize(
    "line",
    [
        "GEOMETRY_N_PER_SIDE=1",
        "GEOMETRY_OPENING_ANGLE_DEG=180",
        "GEOMETRY_STANDOFF=0",
        "SCENE_CASE=5",
        "SYNTH_PATH=measured",
        "SOLVER_ITERATIONS=0",
        "COMPRESS_EPSILON=0",
        "COMPRESS_STENCIL=spline",
        "LOG_LEVEL=chatty",
    ],
)
def test_invalid_values_are_rejected(tmp_path: Path, line: str) -> None:
    env = _write_env(tmp_path / "bad.env", line + "\n")

    with pytest.raises(ConfigurationError):
        load_settings(env)


def test_apply_overrides_skips_none_and_unknown_paths() -> None:
    settings = load_settings()

    apply_overrides(
        settings,
        {
            "solver.iterations": 10,
            "compression.epsilon": None,
            "geometry.no_such_field": 3,
            "nowhere.iterations": 3,
            "threads": 4,
        },
    )

    assert settings.solver.iterations == 10
    assert settings.compression.epsilon == 0.1
    assert settings.threads == 4


def test_apply_overrides_validates_values() -> None:
    settings = load_settings()

    with pytest.raises(ConfigurationError, match="geometry.n_per_side"):
        apply_overrides(settings, {"geometry.n_per_side": 1})


def test_layout_file_must_exist(tmp_path: Path) -> None:
    with pytest.raises(ValueError):
        GeometryConfig(geometry_layout_file=str(tmp_path / "missing.txt"))


def test_opening_angle_in_radians() -> None:
    config = GeometryConfig(geometry_opening_angle_deg=90.0)

    assert config.opening_angle == pytest.approx(1.5707963267948966)
