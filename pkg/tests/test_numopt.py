"""Tests for the scalar searches, the ellipsoid method and the brute-force oracle."""

import math

import numpy as np
import pytest

from cogjam.models.channel import StateEnsemble
from cogjam.numopt import (
    BisectionSpec,
    BruteForceObjective,
    Ellipsoid,
    EllipsoidStatus,
    bisect_bracket,
    bisect_monotone,
    brute_force_jam,
    ellipsoid_minimize,
    golden_section_maximize,
)
from cogjam.utils.exceptions import (
    BracketError,
    ContractError,
    ConvergenceError,
    NumericalError,
    SizeError,
)


class TestBisection:
    def test_residual_root(self):
        root = bisect_monotone(lambda x: x * x - 2.0, BisectionSpec(0.0, 2.0))

        assert root == pytest.approx(math.sqrt(2.0), abs=1e-9)

    def test_decreasing_residual(self):
        root = bisect_monotone(lambda x: 1.0 - x, BisectionSpec(0.0, 3.0))

        assert root == pytest.approx(1.0, abs=1e-9)

    def test_predicate_flip(self):
        lo, hi = bisect_bracket(lambda x: x >= 0.3, BisectionSpec(0.0, 1.0, tol_abs=1e-6))

        assert lo < 0.3 <= hi
        assert hi - lo <= 1e-6

    def test_exact_zero_at_endpoint(self):
        assert bisect_bracket(lambda x: x, BisectionSpec(0.0, 1.0)) == (0.0, 0.0)

    def test_no_sign_change(self):
        with pytest.raises(BracketError):
            bisect_monotone(lambda x: x + 1.0, BisectionSpec(0.0, 1.0))

    def test_nan_residual(self):
        with pytest.raises(BracketError, match="NaN"):
            bisect_monotone(
                lambda x: math.nan if 0.0 < x < 1.0 else x - 0.5, BisectionSpec(0.0, 1.0)
            )

    def test_iteration_cap(self):
        spec = BisectionSpec(0.0, 1.0, tol_abs=1e-15, tol_rel=1e-15, max_iter=5)

        with pytest.raises(ConvergenceError):
            bisect_monotone(lambda x: x - 0.3, spec)

    @pytest.mark.parametrize(
        "lo,hi,kwargs",
        [
            (1.0, 0.0, {}),
            (0.0, math.inf, {}),
            (0.0, 1.0, {"tol_abs": 0.0}),
            (0.0, 1.0, {"max_iter": 0}),
        ],
    )
    def test_invalid_spec(self, lo, hi, kwargs):
        with pytest.raises(ContractError):
            BisectionSpec(lo, hi, **kwargs)


class TestGoldenSection:
    def test_finds_interior_maximum(self):
        x, value = golden_section_maximize(lambda x: -((x - 1.0) ** 2), 0.0, 3.0)

        assert x == pytest.approx(1.0, abs=1e-2)
        assert value <= 0.0

    def test_invalid_interval(self):
        with pytest.raises(ContractError):
            golden_section_maximize(lambda x: x, 1.0, 1.0)


def quadratic(center):
    center = np.asarray(center, dtype=float)

    def oracle(x):
        d = x - center
        return float(d @ d), 2.0 * d

    return oracle


class TestEllipsoid:
    def test_cut_shrinks_volume(self):
        ball = Ellipsoid.ball([0.0, 0.0], 1.0)

        cut = ball.cut([1.0, 0.0])

        assert cut.det < ball.det
        assert cut.center[0] < 0.0
        assert ball.contains([0.5, 0.0])

    def test_rejects_indefinite_shape(self):
        with pytest.raises(NumericalError):
            Ellipsoid(center=[0.0, 0.0], shape=[[1.0, 0.0], [0.0, -1.0]])

    def test_rejects_one_dimensional(self):
        with pytest.raises(ContractError):
            Ellipsoid.ball([0.0], 1.0)

    def test_degenerate_cut(self):
        with pytest.raises(NumericalError):
            Ellipsoid.ball([0.0, 0.0], 1.0).cut([0.0, 0.0])

    def test_unconstrained_minimum(self):
        result = ellipsoid_minimize(quadratic([2.0, -1.0]), Ellipsoid.ball([1.0, 1.0], 10.0))

        assert result.point == pytest.approx([2.0, -1.0], abs=1e-2)
        assert result.value < 1e-4
        assert result.status is EllipsoidStatus.CONVERGED

    def test_nonnegative_coordinates(self):
        queried = []

        def oracle(x):
            queried.append(x.copy())
            return quadratic([-1.0, 1.0])(x)

        result = ellipsoid_minimize(
            oracle, Ellipsoid.ball([1.0, 1.0], 10.0), nonneg=[True, False], max_iter=3000
        )

        assert result.point == pytest.approx([0.0, 1.0], abs=1e-2)
        assert all(x[0] >= 0.0 for x in queried)

    def test_three_dimensional(self):
        result = ellipsoid_minimize(
            quadratic([0.5, 2.0, -3.0]), Ellipsoid.ball([1.0, 1.0, 1.0], 10.0), max_iter=4000
        )

        assert result.point == pytest.approx([0.5, 2.0, -3.0], abs=1e-2)

    def test_early_exit(self):
        def oracle(x):
            value, g = quadratic([2.0, 2.0])(x)
            return value - 1.0, g

        result = ellipsoid_minimize(oracle, Ellipsoid.ball([0.0, 0.0], 10.0), early_exit=0.0)

        assert result.status is EllipsoidStatus.EARLY_EXIT
        assert result.value < 0.0

    def test_restart_when_optimum_outside_initial_ball(self):
        result = ellipsoid_minimize(
            quadratic([30.0, 0.0]), Ellipsoid.ball([0.0, 0.0], 10.0), max_restarts=2
        )

        assert result.restarts >= 1
        assert result.point == pytest.approx([30.0, 0.0], abs=1e-1)

    def test_nonneg_flag_length(self):
        with pytest.raises(ContractError):
            ellipsoid_minimize(
                quadratic([0.0, 0.0]), Ellipsoid.ball([0.0, 0.0], 1.0), nonneg=[True]
            )

    def test_bounded_search_stays_in_the_ball(self):
        queried = []

        def oracle(x):
            queried.append(x.copy())
            a = np.array([1.0, -2.0])
            return float(a @ x), a

        result = ellipsoid_minimize(
            oracle, Ellipsoid.ball([0.0, 0.0], 1.0), nonneg=[True, False], bound=1.0
        )

        assert result.value == pytest.approx(-2.0, abs=1e-3)
        assert result.point == pytest.approx([0.0, 1.0], abs=1e-2)
        assert all(np.linalg.norm(x) <= 1.0 + 1e-12 and x[0] >= 0.0 for x in queried)

    def test_bounded_search_never_restarts(self):
        result = ellipsoid_minimize(
            quadratic([30.0, 0.0]), Ellipsoid.ball([0.0, 0.0], 1.0), max_restarts=3, bound=1.0
        )

        assert result.restarts == 0
        assert result.point == pytest.approx([1.0, 0.0], abs=1e-2)

    def test_bounded_early_exit(self):
        def oracle(x):
            a = np.array([0.0, 1.0, -1.0])
            return float(a @ x), a

        result = ellipsoid_minimize(
            oracle,
            Ellipsoid.ball([0.0, 0.0, 0.0], 1.0),
            early_exit=-1e-6,
            nonneg=[True, True, False],
            bound=1.0,
        )

        assert result.status is EllipsoidStatus.EARLY_EXIT
        assert result.value < -1e-6
        assert np.linalg.norm(result.point) <= 1.0 + 1e-12

    def test_bound_must_be_positive(self):
        with pytest.raises(ContractError, match="bound"):
            ellipsoid_minimize(quadratic([0.0, 0.0]), Ellipsoid.ball([0.0, 0.0], 1.0), bound=0.0)


class TestBruteForce:
    def test_non_outage_picks_affordable_states(self, ladder_ensemble, noise):
        grid = [[0.0], [0.0, 1.0], [0.0, 2.0], [0.0, 4.0]]

        allocation, value = brute_force_jam(
            ladder_ensemble, 0.75, grid, BruteForceObjective.NON_OUTAGE, noise
        )

        assert list(allocation) == [0.0, 1.0, 2.0, 0.0]
        assert value == pytest.approx(0.75)

    def test_relative_rate_objective(self, ladder_ensemble, noise):
        grid = [[0.0], [0.0, 1.0], [0.0, 2.0], [0.0, 4.0]]

        allocation, value = brute_force_jam(
            ladder_ensemble,
            1.0,
            grid,
            BruteForceObjective.RELATIVE_RATE_FIXED_P,
            noise,
            power=10.0,
        )

        assert 0.0 < value <= 1.0
        assert np.dot(ladder_ensemble.weights, allocation) <= 1.0 + 1e-12

    def test_relative_rate_needs_power(self, ladder_ensemble, noise):
        with pytest.raises(ContractError):
            brute_force_jam(
                ladder_ensemble, 1.0, [[0.0]] * 4, BruteForceObjective.RELATIVE_RATE_FIXED_P, noise
            )

    def test_size_cap(self, noise):
        ensemble = StateEnsemble.uniform(g0=[2.0] * 10, g1=[1.0] * 10, g2=[1.0] * 10)

        with pytest.raises(SizeError):
            brute_force_jam(
                ensemble,
                1.0,
                [[0.0, 1.0, 2.0]] * 10,
                BruteForceObjective.NON_OUTAGE,
                noise,
                max_combinations=1000,
            )

    def test_grid_length_mismatch(self, ladder_ensemble, noise):
        with pytest.raises(ContractError):
            brute_force_jam(ladder_ensemble, 1.0, [[0.0]], BruteForceObjective.NON_OUTAGE, noise)

    def test_nothing_fits(self, ladder_ensemble, noise):
        with pytest.raises(ContractError, match="fits"):
            brute_force_jam(
                ladder_ensemble, 0.1, [[1.0]] * 4, BruteForceObjective.NON_OUTAGE, noise
            )
