import numpy as np
import pytest

from fbmax.fbm import FbmPath, fbm_covariance_matrix
from fbmax.functionals import (
    FunctionalKind,
    average_functional,
    average_second_moment,
    average_second_moment_limit,
    evaluate_functional,
    max_functional,
)
from fbmax.grid import PathGrid


class TestFunctionals:
    def test_on_plain_arrays(self):
        assert max_functional([-1.0, 2.5, 0.3]) == 2.5
        assert average_functional([-1.0, 2.5, 0.3]) == pytest.approx(0.6)

    def test_on_paths(self):
        g = PathGrid(n_points=3, hurst=0.5)
        path = FbmPath(grid=g, values=np.array([0.5, -0.25, 1.0]))
        assert max_functional(path) == 1.0
        assert average_functional(path) == pytest.approx(5.0 / 12.0)

    def test_evaluate_dispatch(self):
        g = PathGrid(n_points=2, hurst=0.5)
        path = FbmPath(grid=g, values=np.array([1.0, 3.0]))
        top = evaluate_functional(path, FunctionalKind.MAX)
        assert (top.kind, top.value, top.grid) == (FunctionalKind.MAX, 3.0, g)
        avg = evaluate_functional(path, FunctionalKind.AVERAGE)
        assert avg.value == pytest.approx(2.0)

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            max_functional([])


class TestAverageSecondMoment:
    def test_two_point_brownian_value(self):
        # E[((B(1/2) + B(1))/2)^2] = (1/4)(1/2 + 2*(1/2) + 1) = 5/8
        assert average_second_moment(PathGrid(n_points=2, hurst=0.5)) == pytest.approx(
            5.0 / 8.0, rel=1e-15
        )

    @pytest.mark.parametrize("h", [0.0001, 0.0013, 0.3, 0.5, 0.9])
    @pytest.mark.parametrize("n", [2, 17, 128, 512])
    def test_against_covariance_double_sum(self, h, n):
        # independent route: E[(mean of path values)^2] = mean of the full
        # covariance matrix
        g = PathGrid(n_points=n, hurst=h)
        oracle = fbm_covariance_matrix(g).sum() / n ** 2
        assert average_second_moment(g) == pytest.approx(oracle, rel=1e-10)

    @pytest.mark.parametrize("h", [0.0001, 0.25, 0.5, 0.9])
    def test_decreases_to_limit(self, h):
        limit = average_second_moment_limit(h)
        gaps = [
            average_second_moment(PathGrid(n_points=2 ** k, hurst=h)) - limit
            for k in range(3, 11)
        ]
        assert all(g > 0 for g in gaps)
        assert all(a > b for a, b in zip(gaps, gaps[1:]))

    def test_limit_values(self):
        assert average_second_moment_limit(0.5) == pytest.approx(1.0 / 3.0, rel=1e-15)
        with pytest.raises(ValueError):
            average_second_moment_limit(0.0)
        with pytest.raises(ValueError):
            average_second_moment_limit(1.0)
