import math

import numpy as np
import pytest
from pydantic import ValidationError

from easydamas.beamform import psf_matrix, steering, steering_vectors
from easydamas.exceptions import ConfigurationError, InputError, StateError
from easydamas.geometry import build_array_setup, build_scan_grid, default_array
from easydamas.models.scene import SourceEntry, SourceScene, SpectralData
from easydamas.synth import (
    CASE_EPSILONS,
    builtin_case,
    damas_raster,
    remove_diagonal,
    scene_csm_ideal,
    scene_csm_sampled,
    simulate_dirty_map,
)


def make_setup(n_mics: int = 8):
    return build_array_setup(
        default_array(n_mics, 1.0, seed=0),
        aperture=1.0,
        standoff=5.0,
        opening_angle=math.radians(60),
        frequency=3000.0,
    )


def make_scene(grid_size: int, *sources: tuple[int, float]) -> SourceScene:
    return SourceScene(
        entries=[SourceEntry(index=s, amplitude=q) for s, q in sources], grid_size=grid_size
    )


class TestSourceScene:
    def test_power_vector(self) -> None:
        scene = make_scene(16, (3, 2.0), (10, 0.5))
        x = scene.power_vector()

        assert x[3] == 4.0
        assert x[10] == 0.25
        assert np.count_nonzero(x) == 2
        assert scene.total_power == pytest.approx(4.25)

    def test_duplicate_index_rejected(self) -> None:
        with pytest.raises(ValidationError):
            make_scene(16, (3, 1.0), (3, 1.0))

    def test_out_of_range_index_rejected(self) -> None:
        with pytest.raises(ValidationError):
            make_scene(16, (16, 1.0))

    def test_negative_amplitude_rejected(self) -> None:
        with pytest.raises(ValidationError):
            make_scene(16, (1, -1.0))


class TestIdealCsm:
    def test_empty_scene_gives_zero_matrix(self) -> None:
        setup = make_setup()
        grid = build_scan_grid(setup, 4)

        data = scene_csm_ideal(make_scene(grid.size), setup, grid)

        assert data.csm.shape == (8, 8)
        assert np.all(data.csm == 0)

    def test_single_source_is_rank_one(self) -> None:
        setup = make_setup()
        grid = build_scan_grid(setup, 4)
        _, g = steering_vectors(setup.mic_positions, grid.points[5:6], setup.wavenumber)

        data = scene_csm_ideal(make_scene(grid.size, (5, 1.0)), setup, grid)
        eigenvalues = np.linalg.eigvalsh(data.csm)

        assert np.trace(data.csm).real == pytest.approx(np.sum(np.abs(g) ** 2))
        assert eigenvalues[-1] == pytest.approx(np.sum(np.abs(g) ** 2))
        assert np.all(np.abs(eigenvalues[:-1]) < 1e-9 * eigenvalues[-1])

    def test_sources_add_incoherently(self) -> None:
        setup = make_setup(4)
        grid = build_scan_grid(setup, 4)
        scene = make_scene(grid.size, (2, 1.0), (9, 0.5))

        expected = np.zeros((4, 4), dtype=np.complex128)
        for s, q in ((2, 1.0), (9, 0.5)):
            _, g = steering_vectors(setup.mic_positions, grid.points[s : s + 1], setup.wavenumber)
            expected += q**2 * np.outer(g[0], g[0].conj())

        assert np.allclose(scene_csm_ideal(scene, setup, grid).csm, expected, atol=1e-12)

    def test_mismatched_grid_is_rejected(self) -> None:
        setup = make_setup()
        grid = build_scan_grid(setup, 4)

        with pytest.raises(InputError):
            scene_csm_ideal(make_scene(25, (1, 1.0)), setup, grid)


class TestSampledCsm:
    def test_same_seed_same_matrix(self) -> None:
        setup = make_setup()
        grid = build_scan_grid(setup, 4)
        scene = make_scene(grid.size, (5, 1.0), (6, 0.5))

        first = scene_csm_sampled(scene, setup, grid, frames=50, snr_db=15.0, seed=7)
        second = scene_csm_sampled(scene, setup, grid, frames=50, snr_db=15.0, seed=7)
        other = scene_csm_sampled(scene, setup, grid, frames=50, snr_db=15.0, seed=8)

        assert np.array_equal(first.csm, second.csm)
        assert not np.allclose(first.csm, other.csm)

    def test_noiseless_fixed_phase_matches_ideal(self) -> None:
        setup = make_setup()
        grid = build_scan_grid(setup, 4)
        scene = make_scene(grid.size, (5, 1.0))

        sampled = scene_csm_sampled(
            scene, setup, grid, frames=1, snr_db=math.inf, seed=0, random_phase=False
        )
        ideal = scene_csm_ideal(scene, setup, grid)

        assert np.allclose(sampled.csm, ideal.csm, rtol=1e-12, atol=1e-15)

    def test_converges_to_ideal(self) -> None:
        setup = make_setup()
        grid = build_scan_grid(setup, 4)
        scene = make_scene(grid.size, (5, 1.0), (10, 0.7))

        sampled = scene_csm_sampled(scene, setup, grid, frames=10000, snr_db=math.inf, seed=1)
        ideal = scene_csm_ideal(scene, setup, grid)

        error = np.linalg.norm(sampled.csm - ideal.csm) / np.linalg.norm(ideal.csm)
        assert error < 0.05

    def test_noisy_matrix_is_hermitian_with_positive_diagonal(self) -> None:
        setup = make_setup()
        grid = build_scan_grid(setup, 4)
        scene = make_scene(grid.size, (5, 1.0))

        data = scene_csm_sampled(scene, setup, grid, frames=20, snr_db=0.0, seed=2)

        assert np.array_equal(data.csm, data.csm.conj().T)
        assert np.all(np.diag(data.csm).real > 0)
        assert data.frames == 20

    def test_noise_power_follows_snr_for_several_sources(self) -> None:
        setup = make_setup(16)
        grid = build_scan_grid(setup, 6)
        scene = make_scene(grid.size, (3, 1.0), (14, 0.5), (30, 0.8))
        ideal = scene_csm_ideal(scene, setup, grid)

        data = scene_csm_sampled(scene, setup, grid, frames=4000, snr_db=10.0, seed=4)

        signal = np.mean(np.diag(ideal.csm).real)
        assert np.mean(np.diag(data.csm).real) == pytest.approx(1.1 * signal, rel=0.05)

    def test_silent_scene_with_finite_snr_is_rejected(self) -> None:
        setup = make_setup()
        grid = build_scan_grid(setup, 4)

        with pytest.raises(InputError):
            scene_csm_sampled(
                make_scene(grid.size, (5, 0.0)), setup, grid, frames=10, snr_db=15.0, seed=0
            )


class TestRemoveDiagonal:
    def test_zero_trace(self) -> None:
        setup = make_setup()
        grid = build_scan_grid(setup, 4)
        data = scene_csm_ideal(make_scene(grid.size, (5, 1.0)), setup, grid)

        removed = remove_diagonal(data)

        assert removed.diagonal_removed
        assert np.all(np.diag(removed.csm) == 0)
        off_diagonal = ~np.eye(8, dtype=bool)
        assert np.array_equal(removed.csm[off_diagonal], data.csm[off_diagonal])
        assert not data.diagonal_removed

    def test_second_removal_is_a_state_error(self) -> None:
        data = SpectralData(csm=np.eye(3), omega=1.0)

        with pytest.raises(StateError):
            remove_diagonal(remove_diagonal(data))

    def test_non_hermitian_csm_rejected(self) -> None:
        with pytest.raises(ValidationError):
            SpectralData(csm=np.array([[1.0, 1.0], [0.0, 1.0]]), omega=1.0)


class TestBuiltinCases:
    def test_case_one(self) -> None:
        scene = builtin_case(1)

        assert scene.name == "case1"
        assert scene.indices.tolist() == [24 * 50 + 24]
        assert scene.total_power == 1.0

    def test_case_two_neighbours(self) -> None:
        assert builtin_case(2).indices.tolist() == [24 * 50 + 24, 25 * 50 + 24]

    def test_case_three_level_difference(self) -> None:
        scene = builtin_case(3)
        strong, weak = scene.amplitudes

        assert scene.indices.tolist() == [24 * 50 + 24, 28 * 50 + 24]
        assert 20 * math.log10(strong / weak) == pytest.approx(10.0, abs=0.05)

    def test_case_four_raster(self) -> None:
        scene = builtin_case(4)
        cells = damas_raster()
        rows = [r for r, _ in cells]
        cols = [c for _, c in cells]

        assert scene.n_sources == 70
        assert len(set(cells)) == 70
        assert np.all(scene.amplitudes == 1.0)
        assert min(rows) == 19 and max(rows) == 29
        assert min(cols) == 4 and max(cols) == 44

    def test_default_epsilons(self) -> None:
        assert CASE_EPSILONS == {1: 0.1, 2: 0.3, 3: 0.1, 4: 0.1}

    def test_unknown_case(self) -> None:
        with pytest.raises(ConfigurationError):
            builtin_case(5)

    def test_grid_too_small(self) -> None:
        with pytest.raises(ConfigurationError):
            builtin_case(1, n_per_side=20)


class TestDirtyMap:
    def test_ideal_path_is_psf_times_sources(self) -> None:
        setup = make_setup()
        grid = build_scan_grid(setup, 6)
        steer = steering(setup, grid)
        psf = psf_matrix(setup, grid, steer)
        scene = make_scene(grid.size, (7, 1.0), (20, 0.5))

        b = simulate_dirty_map(scene, setup, steer, psf=psf, path="ideal")

        assert np.allclose(b.values, psf.matrix @ scene.power_vector())

    def test_ideal_path_needs_psf(self) -> None:
        setup = make_setup()
        grid = build_scan_grid(setup, 6)

        with pytest.raises(ConfigurationError):
            simulate_dirty_map(
                make_scene(grid.size, (7, 1.0)), setup, steering(setup, grid), path="ideal"
            )

    def test_sampled_path_is_deterministic(self) -> None:
        setup = make_setup()
        grid = build_scan_grid(setup, 6)
        steer = steering(setup, grid)
        scene = make_scene(grid.size, (14, 1.0))

        first = simulate_dirty_map(scene, setup, steer, frames=40, seed=3)
        second = simulate_dirty_map(scene, setup, steer, frames=40, seed=3)

        assert np.array_equal(first.values, second.values)
        assert first.values.min() >= 0
