"""Tests for the experiment runner commands."""

import numpy as np
import pandas as pd
import pytest

from cogjam.channel import read_ensemble
from cogjam.config import load_config
from cogjam.experiments import ExperimentRunner, PartialRunError
from cogjam.models.policy import EVAL_COLUMNS, JammingPolicy
from cogjam.reports import BETA_SCAN_COLUMNS, SWEEP_P_COLUMNS
from cogjam.solvers import solve_outage
from cogjam.utils.exceptions import SolverError

FAST_SOLVERS = {
    "beta_grid_size": 3,
    "t_tol": 0.05,
    "ellipsoid": {"size_tol": 1e-6, "max_iter": 600, "max_restarts": 1},
}


@pytest.fixture
def runner(small_config_file, tmp_path):
    return ExperimentRunner(load_config(small_config_file), output_dir=tmp_path / "out")


@pytest.fixture
def rate_runner(tmp_path):
    config = load_config(
        overrides={
            "experiment": {"name": "rate", "n_states": 40, "seed": 8},
            "power": {"p_sweep": [10.0, 20.0], "q_fixed": 10.0},
            "solvers": {**FAST_SOLVERS, "beta_scan_q": 10.0},
        }
    )
    return ExperimentRunner(config, output_dir=tmp_path / "rate")


class TestSweepQ:
    def test_rows_and_file(self, runner):
        result = runner.sweep_q()

        frame = pd.read_csv(result.files[0])
        assert result.files[0].name == "small_sweep_q.csv"
        assert list(frame.columns) == EVAL_COLUMNS
        assert len(frame) == 12
        assert frame["label"].tolist()[:4] == ["optimal", "constant", "onoff", "passive"]
        assert result.warnings == []

    def test_optimal_non_outage_grows_with_budget(self, runner):
        result = runner.sweep_q()

        optimal = [r.non_outage_prob for r in result.reports if r.label == "optimal"]
        assert optimal == sorted(optimal)
        assert optimal[-1] > optimal[0]

    def test_rerun_is_byte_identical(self, small_config_file, tmp_path):
        first = ExperimentRunner(load_config(small_config_file), tmp_path / "a").sweep_q()
        second = ExperimentRunner(load_config(small_config_file), tmp_path / "b").sweep_q()

        assert first.files[0].read_bytes() == second.files[0].read_bytes()

    def test_threads_do_not_change_output(self, small_config_file, tmp_path):
        serial = ExperimentRunner(load_config(small_config_file), tmp_path / "a", threads=1)
        parallel = ExperimentRunner(load_config(small_config_file), tmp_path / "b", threads=3)

        first = serial.sweep_q().files[0]
        second = parallel.sweep_q().files[0]

        assert first.read_bytes() == second.read_bytes()

    def test_partial_results_on_solver_failure(self, runner, mocker):
        mocker.patch.object(
            ExperimentRunner,
            "_optimal_policy",
            side_effect=[JammingPolicy.zeros(300, label="optimal"), SolverError("boom")],
        )

        with pytest.raises(PartialRunError) as exc_info:
            runner.sweep_q()

        error = exc_info.value
        assert isinstance(error.cause, SolverError)
        assert str(error) == "boom"
        frame = pd.read_csv(error.result.files[0])
        assert len(frame) == 4
        assert set(frame["Q"]) == {0.0}

    def test_unexpected_errors_still_write_finished_rows(self, runner, mocker):
        mocker.patch.object(
            ExperimentRunner,
            "_optimal_policy",
            side_effect=[JammingPolicy.zeros(300, label="optimal"), ValueError("bad gains")],
        )

        with pytest.raises(PartialRunError) as exc_info:
            runner.sweep_q()

        error = exc_info.value
        assert isinstance(error.cause, SolverError)
        assert isinstance(error.cause.__cause__, ValueError)
        assert "ValueError: bad gains" in str(error)
        frame = pd.read_csv(error.result.files[0])
        assert len(frame) == 4


class TestOnline:
    def test_trace_and_comparison(self, runner):
        result = runner.online()

        names = [path.name for path in result.files]
        assert names == ["small_online_trace.csv", "small_online_comparison.csv"]
        trace = pd.read_csv(result.files[0])
        assert len(trace) == 300
        comparison = pd.read_csv(result.files[1])
        assert len(comparison) == 18
        assert comparison["label"].tolist()[:6] == [
            "optimal-si",
            "optimal-no-si",
            "online",
            "constant",
            "onoff",
            "passive",
        ]
        assert "online non-outage" in result.summary

    def test_rayleigh_has_no_self_interference_gap(self, runner):
        result = runner.online()

        by_label = {(r.label, r.budget): r for r in result.reports}
        for q_value in (0.0, 10.0, 20.0):
            assert (
                by_label[("optimal-si", q_value)].non_outage_prob
                == by_label[("optimal-no-si", q_value)].non_outage_prob
            )
        assert not any("optimal-no-si" in w for w in result.warnings)


class TestRateCommands:
    def test_sweep_p(self, rate_runner):
        result = rate_runner.sweep_p()

        frame = pd.read_csv(result.files[0])
        assert list(frame.columns) == SWEEP_P_COLUMNS
        assert frame["P"].tolist() == [10.0, 20.0]
        assert frame["relative_rate_fixed"].between(0.0, 1.0).all()
        assert set(result.summary) == {"P=10", "P=20"}

    def test_beta_scan(self, rate_runner):
        result = rate_runner.beta_scan()

        frame = pd.read_csv(result.files[0])
        assert list(frame.columns) == BETA_SCAN_COLUMNS
        assert len(frame) == 3
        assert frame["beta"].is_monotonic_increasing
        assert float(result.summary["beta_min"]) <= float(result.summary["beta*"])


class TestSelfInterferenceGeometry:
    @pytest.fixture
    def preset_runner(self, tmp_path):
        def build(preset):
            config = load_config(preset=preset, overrides={"experiment": {"n_states": 2000}})
            return ExperimentRunner(config, tmp_path / preset)

        return build

    def _non_outage(self, runner, q_value):
        ensemble = runner.build_ensemble()
        budget = runner.config.jam_budget(q_value)
        with_si = solve_outage(ensemble, budget, runner.noise, si=True)
        without_si = solve_outage(ensemble.with_perfect_sic(), budget, runner.noise)
        return with_si.non_outage, without_si.non_outage

    @pytest.mark.parametrize("preset", ["fig10", "fig11"])
    def test_self_interference_never_helps(self, preset_runner, preset):
        runner = preset_runner(preset)

        for q_value in runner.config.power.q_sweep:
            with_si, without_si = self._non_outage(runner, q_value)
            assert with_si <= without_si + 1e-12

    def test_separate_antennas_match_perfect_cancellation(self, preset_runner):
        runner = preset_runner("fig11")

        for q_value in runner.config.power.q_sweep:
            with_si, without_si = self._non_outage(runner, q_value)
            assert abs(with_si - without_si) <= 0.005

    def test_colocated_antennas_lose_at_large_budget(self, preset_runner):
        with_si, without_si = self._non_outage(preset_runner("fig10"), 40.0)

        assert without_si - with_si >= 0.01


class TestGenEnsemble:
    def test_round_trip(self, runner):
        result = runner.gen_ensemble()

        loaded = read_ensemble(result.files[0])
        ensemble = runner.build_ensemble()
        assert result.summary["states"] == "300"
        assert np.array_equal(loaded.g0, ensemble.g0)
        assert np.array_equal(loaded.g2, ensemble.g2)

    def test_geometric_scenario(self, tmp_path):
        config = load_config(preset="fig11", overrides={"experiment": {"n_states": 25}})

        ensemble = ExperimentRunner(config, tmp_path).build_ensemble()

        assert len(ensemble) == 25
        assert ensemble.has_self_interference
