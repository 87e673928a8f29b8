import json
import math
from pathlib import Path

import pytest
from typer.testing import CliRunner

from easydamas.config import apply_overrides, get_settings, load_settings
from easydamas.exceptions import StageError
from easydamas.main import app
from easydamas.pipeline import CasePipeline
from easydamas.pipeline.case_pipeline import ARTIFACTS

SETTINGS = """\
# [geometry]
GEOMETRY_N_MICS=16
GEOMETRY_N_PER_SIDE=16

# [scene]
SCENE_FILE=scene.txt

# [synthesis]
SYNTH_PATH={path}
SYNTH_FRAMES=50
SYNTH_SEED=3

# [solver]
SOLVER_ITERATIONS=40
"""

runner = CliRunner()


@pytest.fixture(autouse=True)
def _workspace(tmp_path: Path, monkeypatch) -> Path:
    monkeypatch.chdir(tmp_path)
    get_settings.cache_clear()
    (tmp_path / "scene.txt").write_text("# row col amplitude\n7 8 1.0\n", encoding="utf-8")
    return tmp_path


def write_settings(tmp_path: Path, path: str = "ideal") -> Path:
    env = tmp_path / "small.env"
    env.write_text(SETTINGS.format(path=path), encoding="utf-8")
    return env


def run_pipeline(tmp_path: Path, out: str, **overrides):
    settings = load_settings(write_settings(tmp_path, overrides.pop("path", "ideal")))
    apply_overrides(settings, overrides)
    return CasePipeline(settings, configure_logging=False).run(out_dir=tmp_path / out)


class TestCasePipeline:
    def test_run_writes_all_artifacts(self, tmp_path: Path) -> None:
        stats = run_pipeline(tmp_path, "out")

        for name in ARTIFACTS:
            assert (tmp_path / "out" / name).is_file(), name
        assert len(stats.artifacts) == len(ARTIFACTS)
        assert stats.case == "scene"
        assert stats.errors == []
        assert {"geometry", "psf", "compress", "solve", "write", "render"} <= set(
            stats.stage_seconds
        )

    def test_report_values(self, tmp_path: Path) -> None:
        report = run_pipeline(tmp_path, "out").report

        assert report is not None
        assert report.p0 == pytest.approx(1.0)
        assert report.n_points == 256
        assert report.n_mics == 16
        assert report.peak_full == (7, 8)
        assert 1.0 <= report.sigma <= 256
        for value in (report.p1, report.p2, report.eta1, report.eta2, report.t1, report.t2):
            assert math.isfinite(value)

        payload = json.loads((tmp_path / "out" / "report.json").read_text(encoding="utf-8"))
        assert payload["case"] == "scene"
        solve = json.loads((tmp_path / "out" / "solve_full.json").read_text(encoding="utf-8"))
        assert solve["iterations"] == 40
        assert solve["grid"] == "full"
        text = (tmp_path / "out" / "report.txt").read_text(encoding="utf-8")
        assert "Compression ratio" in text
        assert "Efficiency increasing" in text

    def test_without_artifacts(self, tmp_path: Path) -> None:
        settings = load_settings(write_settings(tmp_path))
        stats = CasePipeline(settings, configure_logging=False).run(
            out_dir=tmp_path / "none", write_artifacts=False
        )

        assert stats.report is not None
        assert stats.artifacts == []
        assert not (tmp_path / "none").exists()

    def test_sampled_path_is_reproducible(self, tmp_path: Path) -> None:
        run_pipeline(tmp_path, "a", path="sampled")
        run_pipeline(tmp_path, "b", path="sampled")

        for name in ("beamform.csv", "damas_full.csv", "damas_compressed.ppm"):
            assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()

    def test_thread_count_does_not_change_artifacts(self, tmp_path: Path) -> None:
        grid = {"geometry.n_per_side": 20}
        run_pipeline(tmp_path, "one", path="sampled", threads=1, **grid)
        run_pipeline(tmp_path, "two", path="sampled", threads=3, **grid)

        for name in ("beamform.csv", "damas_full.csv", "compressed_grid.txt", "beamform.ppm"):
            assert (tmp_path / "one" / name).read_bytes() == (tmp_path / "two" / name).read_bytes()

    def test_psf_budget_failure_is_tagged(self, tmp_path: Path) -> None:
        with pytest.raises(StageError) as info:
            run_pipeline(tmp_path, "out", max_matrix_bytes=1000)

        assert info.value.stage == "psf"
        assert "[psf]" in str(info.value)
        assert not (tmp_path / "out").exists()

    def test_grid_too_small_for_builtin_case(self, tmp_path: Path) -> None:
        settings = load_settings(write_settings(tmp_path))
        settings.scene.scene_file = None
        settings.scene.case_id = 1

        with pytest.raises(StageError) as info:
            CasePipeline(settings, configure_logging=False).run(write_artifacts=False)

        assert info.value.stage == "synthesis"

    def test_epsilon_sweep(self, tmp_path: Path) -> None:
        settings = load_settings(write_settings(tmp_path))

        rows = CasePipeline(settings, configure_logging=False).run_epsilon_sweep([0.05, 0.2])

        assert [row.epsilon for row in rows] == [0.05, 0.2]
        assert rows[0].kept >= rows[1].kept


class TestCli:
    def test_version(self) -> None:
        result = runner.invoke(app, ["version"])

        assert result.exit_code == 0
        assert "EasyDamas version" in result.stdout

    def test_invalid_grid_exits_with_error(self) -> None:
        result = runner.invoke(app, ["run-case", "--grid", "1"])

        assert result.exit_code == 1

    def test_missing_settings_file(self, tmp_path: Path) -> None:
        result = runner.invoke(app, ["config", "--env", str(tmp_path / "absent.env")])

        assert result.exit_code == 1

    def test_config_shows_blocks(self, tmp_path: Path) -> None:
        result = runner.invoke(app, ["config", "--env", str(write_settings(tmp_path))])

        assert result.exit_code == 0
        assert "n_per_side: 16" in result.stdout

    def test_run_case(self, tmp_path: Path) -> None:
        env = write_settings(tmp_path)

        result = runner.invoke(
            app,
            ["run-case", "--env", str(env), "--scene", "scene.txt", "--out", "cli", "-n", "20"],
        )

        assert result.exit_code == 0, result.stdout
        for name in ARTIFACTS:
            assert (tmp_path / "cli" / name).is_file(), name

    def test_case_option_wins_over_scene_file_setting(self, tmp_path: Path) -> None:
        env = write_settings(tmp_path)

        result = runner.invoke(
            app,
            ["run-case", "--env", str(env), "--case", "1", "--grid", "25"]
            + ["-n", "5", "--out", "c1"],
        )

        assert result.exit_code == 0, result.stdout
        payload = json.loads((tmp_path / "c1" / "report.json").read_text(encoding="utf-8"))
        assert payload["case"] == "case1"
        assert payload["n_points"] == 625

    def test_scene_option_wins_over_case_option(self, tmp_path: Path) -> None:
        env = write_settings(tmp_path)

        result = runner.invoke(
            app,
            ["run-case", "--env", str(env), "-c", "1", "--scene", "scene.txt"]
            + ["-n", "5", "--out", "s"],
        )

        assert result.exit_code == 0, result.stdout
        payload = json.loads((tmp_path / "s" / "report.json").read_text(encoding="utf-8"))
        assert payload["case"] == "scene"

    def test_compress_then_solve(self, tmp_path: Path) -> None:
        env = str(write_settings(tmp_path))
        beam = runner.invoke(app, ["beamform", "--env", env, "--out", "step"])
        assert beam.exit_code == 0, beam.stdout

        compressed = runner.invoke(
            app,
            ["compress", "step/beamform.csv", "--env", env, "--out", "step/grid.txt"],
        )
        assert compressed.exit_code == 0, compressed.stdout

        solved = runner.invoke(
            app,
            [
                "solve",
                "step/beamform.csv",
                "--env",
                env,
                "--grid-file",
                "step/grid.txt",
                "--out",
                "step",
                "-n",
                "10",
            ],
        )
        assert solved.exit_code == 0, solved.stdout
        assert (tmp_path / "step" / "damas.ppm").is_file()
        assert json.loads((tmp_path / "step" / "solve.json").read_text())["iterations"] == 10

    def test_render(self, tmp_path: Path) -> None:
        env = str(write_settings(tmp_path))
        runner.invoke(app, ["beamform", "--env", env, "--out", "step"])

        result = runner.invoke(
            app, ["render", "step/beamform.csv", "--env", env, "--out", "step/view.ppm"]
        )

        assert result.exit_code == 0
        assert (tmp_path / "step" / "view.ppm").read_bytes().startswith(b"P6")
