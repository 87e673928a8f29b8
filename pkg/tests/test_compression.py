from itertools import pairwise

import numpy as np
import pytest

from easydamas.compression import (
    BaseStencil,
    StencilFactory,
    build_nested_grids,
    compress,
    detail_coefficients,
    effective_threshold,
    predict,
    reconstruct,
    reconstruct_error_bound_check,
)
from easydamas.exceptions import ConfigurationError
from easydamas.models.compression import CompressedGrid
from easydamas.models.geometry import ScanGrid
from easydamas.models.maps import BeamMap


def make_grid(n: int, length: float = 5.0) -> ScanGrid:
    axis = np.linspace(-length / 2, length / 2, n)
    xx, yy = np.meshgrid(axis, axis)
    points = np.stack([xx.ravel(), yy.ravel(), np.full(n * n, 5.0)], axis=1)
    return ScanGrid(n_per_side=n, side_length=length, standoff=5.0, points=points)


def make_map(image: np.ndarray) -> BeamMap:
    return BeamMap(values=image.ravel(), grid=make_grid(image.shape[0]))


def gaussians(n: int) -> np.ndarray:
    rows, cols = np.mgrid[0:n, 0:n].astype(float)
    image = np.zeros((n, n))
    for r0, c0, width, peak in ((10, 12, 3.0, 1.0), (20, 22, 4.0, 0.6), (16, 6, 2.5, 0.3)):
        image += peak * np.exp(-((rows - r0) ** 2 + (cols - c0) ** 2) / (2 * width**2))
    return image


class TestNestedGrids:
    def test_level_sizes_for_50(self) -> None:
        grids = build_nested_grids(50)

        assert grids.max_level == 5
        assert grids.sizes() == [50, 25, 13, 7, 4, 2]

    def test_level_sizes_for_17(self) -> None:
        assert build_nested_grids(17).sizes() == [17, 9, 5, 3, 2]

    def test_two_point_grid(self) -> None:
        grids = build_nested_grids(2)

        assert grids.max_level == 1
        assert grids.sizes() == [2, 1]

    @pytest.mark.parametrize("n", range(2, 65))
    def test_levels_nest(self, n: int) -> None:
        grids = build_nested_grids(n)

        assert np.array_equal(grids.axis(grids.max_level), np.arange(n))
        for level in range(grids.max_level):
            assert np.array_equal(grids.axis(level), grids.axis(level + 1)[::2])
            coarse = set(grids.level_indices(level).tolist())
            assert coarse <= set(grids.level_indices(level + 1).tolist())

    def test_one_point_grid_rejected(self) -> None:
        with pytest.raises(ConfigurationError):
            build_nested_grids(1)


class TestStencils:
    def test_factory_registry(self) -> None:
        assert {"linear", "cubic"} <= set(StencilFactory.get_supported_types())
        assert StencilFactory.create("Linear").n_points == 2
        assert StencilFactory.create("cubic").n_points == 4

    def test_unknown_stencil(self) -> None:
        with pytest.raises(ConfigurationError, match="Available stencils"):
            StencilFactory.create("quintic")

    def test_register_custom_stencil(self) -> None:
        class SixPointStencil(BaseStencil):
            @property
            def name(self) -> str:
                return "six"

            @property
            def n_points(self) -> int:
                return 6

        StencilFactory.register("six", SixPointStencil)

        assert StencilFactory.create("six").interpolation_matrix(9, 17).shape == (17, 9)

    def test_linear_weights(self) -> None:
        matrix = StencilFactory.create("linear").interpolation_matrix(3, 5)

        assert matrix.tolist() == [
            [1.0, 0.0, 0.0],
            [0.5, 0.5, 0.0],
            [0.0, 1.0, 0.0],
            [0.0, 0.5, 0.5],
            [0.0, 0.0, 1.0],
        ]

    def test_linear_extrapolates_at_even_length(self) -> None:
        matrix = StencilFactory.create("linear").interpolation_matrix(2, 4)

        assert matrix[3].tolist() == [-0.5, 1.5]

    @pytest.mark.parametrize("n_fine", [7, 8, 13, 25, 50])
    def test_cubic_reproduces_cubics(self, n_fine: int) -> None:
        n_coarse = (n_fine + 1) // 2
        matrix = StencilFactory.create("cubic").interpolation_matrix(n_coarse, n_fine)

        def poly(t: np.ndarray) -> np.ndarray:
            return 0.3 * t**3 - t**2 + 2 * t - 1

        coarse = poly(np.arange(n_coarse, dtype=float))
        fine = poly(np.arange(n_fine, dtype=float) / 2)
        assert np.allclose(matrix @ coarse, fine, atol=1e-9 * np.abs(fine).max())

    def test_rows_sum_to_one(self) -> None:
        for name in ("linear", "cubic"):
            matrix = StencilFactory.create(name).interpolation_matrix(13, 25)
            assert np.allclose(matrix.sum(axis=1), 1.0)

    def test_levels_must_nest(self) -> None:
        with pytest.raises(ConfigurationError):
            StencilFactory.create("linear").interpolation_matrix(5, 7)


class TestDetails:
    def test_constant_map_has_no_details(self) -> None:
        b = make_map(np.full((50, 50), 3.7))
        grids = build_nested_grids(50)

        for level in range(grids.max_level):
            assert np.max(np.abs(detail_coefficients(b, grids, level))) <= 1e-12

    @pytest.mark.parametrize("n", [9, 16, 50])
    def test_linear_ramp_has_no_details(self, n: int) -> None:
        rows, cols = np.mgrid[0:n, 0:n].astype(float)
        b = make_map(0.3 * rows - 0.7 * cols + 2.0)
        grids = build_nested_grids(n)

        for level in range(grids.max_level):
            if grids.axis_size(level) < 2:
                continue
            assert np.max(np.abs(detail_coefficients(b, grids, level))) <= 1e-9

    def test_single_point_level_predicts_a_constant(self) -> None:
        rows, cols = np.mgrid[0:16, 0:16].astype(float)
        b = make_map(rows + 2.0 * cols)
        grids = build_nested_grids(16)

        details = detail_coefficients(b, grids, 0)

        assert grids.axis_size(0) == 1
        # level 1 holds full-grid rows and cols 0 and 8
        assert details[0, 1] == pytest.approx(16.0)
        assert details[1, 0] == pytest.approx(8.0)
        assert details[1, 1] == pytest.approx(24.0)

    def test_finest_level_matches_brute_force(self) -> None:
        image = np.random.default_rng(5).uniform(0.0, 1.0, (9, 9))
        b = make_map(image)

        details = detail_coefficients(b, build_nested_grids(9), level=2)

        expected = np.zeros((9, 9))
        for r in range(9):
            for c in range(9):
                if r % 2 == 0 and c % 2 == 1:
                    predicted = (image[r, c - 1] + image[r, c + 1]) / 2
                elif r % 2 == 1 and c % 2 == 0:
                    predicted = (image[r - 1, c] + image[r + 1, c]) / 2
                elif r % 2 == 1 and c % 2 == 1:
                    predicted = (
                        image[r - 1, c - 1]
                        + image[r - 1, c + 1]
                        + image[r + 1, c - 1]
                        + image[r + 1, c + 1]
                    ) / 4
                else:
                    continue
                expected[r, c] = image[r, c] - predicted

        assert np.allclose(details, expected, atol=1e-12)

    def test_predict_keeps_coarse_values(self) -> None:
        coarse = np.random.default_rng(6).uniform(0.0, 1.0, (7, 7))

        fine = predict(coarse, 13, "cubic")

        assert np.allclose(fine[::2, ::2], coarse)

    def test_level_out_of_range(self) -> None:
        b = make_map(np.zeros((9, 9)))

        with pytest.raises(ConfigurationError):
            detail_coefficients(b, build_nested_grids(9), level=3)


class TestCompress:
    def test_constant_map_keeps_coarsest_level(self) -> None:
        b = make_map(np.full((50, 50), 2.0))

        cg = compress(b, 0.1)

        assert cg.kept.tolist() == build_nested_grids(50).level_indices(0).tolist()
        assert cg.sigma == 625.0
        assert np.all(cg.levels == 0)

    def test_zero_map_keeps_coarsest_level(self) -> None:
        cg = compress(make_map(np.zeros((16, 16))), 0.1)

        assert cg.threshold == 0.0
        assert cg.size == 1

    def test_tiny_epsilon_keeps_everything(self) -> None:
        b = make_map(np.random.default_rng(7).uniform(0.1, 1.0, (33, 33)))

        cg = compress(b, 1e-12)

        assert cg.size == b.size
        assert cg.sigma == 1.0

    def test_coarsest_level_always_kept_and_sigma_bounded(self) -> None:
        b = make_map(gaussians(33))
        grids = build_nested_grids(33)

        for epsilon in (0.01, 0.1, 0.5, 5.0):
            cg = compress(b, epsilon)
            assert set(grids.level_indices(0).tolist()) <= set(cg.kept.tolist())
            assert 1.0 <= cg.sigma <= b.size / grids.level_indices(0).size

    def test_monotone_in_epsilon(self) -> None:
        b = make_map(gaussians(50))
        kept = [set(compress(b, eps).kept.tolist()) for eps in (0.005, 0.02, 0.05, 0.1, 0.3)]

        for finer, coarser in pairwise(kept):
            assert coarser <= finer

    def test_level_tags(self) -> None:
        b = make_map(gaussians(33))
        grids = build_nested_grids(33)

        cg = compress(b, 0.05)

        for index, level in zip(cg.kept, cg.levels, strict=True):
            row, col = divmod(int(index), 33)
            present = [
                j
                for j in range(grids.max_level + 1)
                if row in grids.axis(j) and col in grids.axis(j)
            ]
            assert level == present[0]

    def test_absolute_mode(self) -> None:
        image = gaussians(33)
        b = make_map(image)

        relative = compress(b, 0.1, mode="relative")
        absolute = compress(b, 0.1 * image.max(), mode="absolute")

        assert effective_threshold(b, 0.1, "relative") == pytest.approx(0.1 * image.max())
        assert np.array_equal(relative.kept, absolute.kept)

    def test_deterministic(self) -> None:
        b = make_map(gaussians(50))

        assert np.array_equal(compress(b, 0.05).kept, compress(b, 0.05).kept)

    @pytest.mark.parametrize(
        "kwargs", [{"epsilon": 0.0}, {"epsilon": -1.0}, {"mode": "percent"}, {"stencil": "none"}]
    )
    def test_invalid_arguments(self, kwargs: dict) -> None:
        args = {"epsilon": 0.1, **kwargs}

        with pytest.raises(ConfigurationError):
            compress(make_map(gaussians(17)), **args)


class TestReconstruct:
    def test_all_points_kept_is_exact(self) -> None:
        image = np.random.default_rng(8).uniform(0.0, 1.0, (20, 20))
        b = make_map(image)
        cg = CompressedGrid(
            kept=np.arange(400), levels=np.zeros(400), epsilon=0.1, full_size=400
        )

        assert np.array_equal(reconstruct(b, cg), image)

    def test_constant_map_from_coarsest_level(self) -> None:
        b = make_map(np.full((50, 50), 1.5))

        assert reconstruct_error_bound_check(b, compress(b, 0.1)) <= 1e-12

    @pytest.mark.parametrize("epsilon", [0.01, 0.05, 0.1, 0.2])
    def test_error_bounded_by_threshold(self, epsilon: float) -> None:
        b = make_map(gaussians(33))

        cg = compress(b, epsilon)

        assert reconstruct_error_bound_check(b, cg) <= 10 * cg.threshold

    def test_cubic_stencil_round_trip(self) -> None:
        b = make_map(gaussians(33))

        cg = compress(b, 0.05, stencil="cubic")

        assert cg.stencil == "cubic"
        assert reconstruct_error_bound_check(b, cg) <= 10 * cg.threshold
