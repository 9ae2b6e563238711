"""Tests for fading ensembles, samplers and ensemble CSV files."""

from pathlib import Path

import numpy as np
import pytest

from cogjam.channel import (
    ENSEMBLE_COLUMNS,
    GeometryConfig,
    RayleighConfig,
    ensemble_to_csv,
    read_ensemble,
    sample_geometric,
    sample_rayleigh,
    write_ensemble,
)
from cogjam.metrics.link import free_success
from cogjam.models.channel import FadingState, StateEnsemble
from cogjam.utils.exceptions import ConfigurationError, ContractError, EnsembleIOError
from cogjam.utils.summation import weighted_sum
from cogjam.utils.units import db_to_linear


class TestStateEnsemble:
    def test_uniform_weights_sum_to_one(self):
        ensemble = StateEnsemble.uniform(g0=[1.0, 2.0, 3.0], g1=[1.0] * 3, g2=[1.0] * 3)

        assert len(ensemble) == 3
        assert np.allclose(ensemble.weights, 1.0 / 3.0)
        assert not ensemble.has_self_interference

    def test_rejects_negative_gain(self):
        with pytest.raises(ContractError):
            FadingState(g0=-1.0, g1=1.0, g2=1.0)

    def test_rejects_weights_not_summing_to_one(self):
        with pytest.raises(ContractError):
            StateEnsemble(
                g0=[1.0, 1.0],
                g1=[1.0, 1.0],
                g2=[1.0, 1.0],
                phi=[0.0, 0.0],
                weights=[0.5, 0.6],
            )

    def test_rejects_length_mismatch(self):
        with pytest.raises(ContractError):
            StateEnsemble(
                g0=[1.0, 1.0],
                g1=[1.0],
                g2=[1.0, 1.0],
                phi=[0.0, 0.0],
                weights=[0.5, 0.5],
            )

    def test_rejects_empty_ensemble(self):
        with pytest.raises(ContractError):
            StateEnsemble.uniform(g0=[], g1=[], g2=[])

    def test_columns_are_read_only(self, ladder_ensemble):
        with pytest.raises(ValueError):
            ladder_ensemble.g0[0] = 10.0

    def test_with_perfect_sic(self):
        ensemble = StateEnsemble.uniform(
            g0=[1.0, 2.0], g1=[1.0, 1.0], g2=[1.0, 1.0], phi=[0.1, 0.0]
        )

        perfect = ensemble.with_perfect_sic()

        assert ensemble.has_self_interference
        assert not perfect.has_self_interference
        assert np.array_equal(perfect.g0, ensemble.g0)

    def test_with_perfect_sic_returns_same_object_without_si(self, ladder_ensemble):
        assert ladder_ensemble.with_perfect_sic() is ladder_ensemble

    def test_subset_renormalizes(self, ladder_ensemble):
        subset = ladder_ensemble.subset([3, 1])

        assert len(subset) == 2
        assert subset[0].g0 == 5.0
        assert np.allclose(subset.weights, 0.5)

    def test_iteration_yields_states(self, ladder_ensemble):
        states = ladder_ensemble.states

        assert [s.g0 for s in states] == [0.5, 2.0, 3.0, 5.0]


class TestSampleRayleigh:
    def test_same_seed_same_ensemble(self):
        config = RayleighConfig(n_states=500)

        first = sample_rayleigh(config, seed=3)
        second = sample_rayleigh(config, seed=3)

        for name in ("g0", "g1", "g2", "phi", "weights"):
            assert np.array_equal(getattr(first, name), getattr(second, name))

    def test_different_seed_different_ensemble(self):
        config = RayleighConfig(n_states=100)

        assert not np.array_equal(
            sample_rayleigh(config, seed=1).g0, sample_rayleigh(config, seed=2).g0
        )

    def test_perfect_cancellation_and_positive_gains(self):
        ensemble = sample_rayleigh(RayleighConfig(n_states=1000), seed=9)

        assert np.all(ensemble.phi == 0.0)
        assert np.all(ensemble.g0 > 0.0)
        assert ensemble.seed == 9

    def test_links_use_independent_streams(self):
        base = sample_rayleigh(RayleighConfig(var2=0.1, n_states=200), seed=4)
        changed = sample_rayleigh(RayleighConfig(var2=0.5, n_states=200), seed=4)

        assert np.array_equal(base.g0, changed.g0)
        assert np.array_equal(base.g1, changed.g1)
        assert not np.array_equal(base.g2, changed.g2)

    def test_sample_means_match_variances(self):
        ensemble = sample_rayleigh(RayleighConfig(n_states=100000), seed=21)

        assert np.mean(ensemble.g0) == pytest.approx(1.0, rel=0.03)
        assert np.mean(ensemble.g1) == pytest.approx(0.1, rel=0.03)
        assert np.mean(ensemble.g2) == pytest.approx(0.1, rel=0.03)

    def test_passive_non_outage_matches_analytic_value(self, noise):
        # P(g1 >= g0) = var1 / (var0 + var1) for independent exponentials
        ensemble = sample_rayleigh(RayleighConfig(n_states=100000), seed=17)

        free = np.asarray(free_success(ensemble, noise), dtype=float)

        assert weighted_sum(ensemble.weights, free) == pytest.approx(1.0 / 11.0, abs=0.01)

    def test_accepts_mapping_config(self):
        ensemble = sample_rayleigh({"var0": 1.0, "var1": 0.1, "var2": 0.1, "n_states": 10}, 0)

        assert len(ensemble) == 10

    def test_invalid_mapping_config(self):
        with pytest.raises(ConfigurationError):
            sample_rayleigh({"var0": -1.0, "n_states": 10}, 0)

    @pytest.mark.parametrize("seed", [-1, 1.5, True])
    def test_invalid_seed(self, seed):
        with pytest.raises(ConfigurationError):
            sample_rayleigh(RayleighConfig(n_states=10), seed)


class TestSampleGeometric:
    def test_colocated_loopback_is_fixed(self):
        config = GeometryConfig()

        ensemble = sample_geometric(config, n_states=200, seed=8)

        expected = db_to_linear(-15.0) / db_to_linear(110.0)
        assert config.colocated
        assert np.allclose(ensemble.phi, expected, rtol=1e-12)
        assert ensemble.label == "geometric-colocated"

    def test_colocated_loopback_fading(self):
        ensemble = sample_geometric(GeometryConfig(loopback_fading=True), n_states=200, seed=8)

        assert np.unique(ensemble.phi).size > 1

    def test_separate_antennas(self):
        config = GeometryConfig(eavesdrop=(250.0, 500.0), jammer=(500.0, 500.0))

        ensemble = sample_geometric(config, n_states=500, seed=8)

        assert not config.colocated
        assert np.all(ensemble.phi > 0.0)
        assert np.mean(ensemble.phi) < config.mean_loopback()
        assert ensemble.label == "geometric-separate"

    def test_pathloss_sets_mean_gain(self):
        config = GeometryConfig()

        ensemble = sample_geometric(config, n_states=100000, seed=2)

        expected = config.mean_gain(500.0)
        assert np.mean(ensemble.g0) == pytest.approx(expected, rel=0.03)

    def test_rejects_shared_tx_rx_position(self):
        with pytest.raises(ConfigurationError):
            sample_geometric({"tx": (0.0, 0.0), "rx": (0.0, 0.0)}, n_states=10, seed=0)

    def test_rejects_bad_state_count(self):
        with pytest.raises(ConfigurationError):
            sample_geometric(GeometryConfig(), n_states=0, seed=0)


class TestEnsembleCsv:
    def test_round_trip_is_exact(self, tmp_path: Path):
        ensemble = sample_geometric(GeometryConfig(), n_states=50, seed=13)

        path = write_ensemble(ensemble, tmp_path / "ensemble.csv")
        loaded = read_ensemble(path)

        for name in ("g0", "g1", "g2", "phi", "weights"):
            assert np.array_equal(getattr(loaded, name), getattr(ensemble, name))
        assert loaded.label == "ensemble"

    def test_model_helpers(self, tmp_path: Path, ladder_ensemble):
        path = ladder_ensemble.to_csv(tmp_path / "ladder.csv")

        loaded = StateEnsemble.from_csv(path, seed=1)

        assert np.array_equal(loaded.g0, ladder_ensemble.g0)
        assert loaded.seed == 1

    def test_header_and_precision(self, ladder_ensemble):
        text = ensemble_to_csv(ladder_ensemble)
        lines = text.splitlines()

        assert lines[0] == ",".join(ENSEMBLE_COLUMNS)
        assert lines[1].startswith("0,0.25,0.5,1,1,0")
        assert len(lines) == 5

    def test_missing_file(self, tmp_path: Path):
        with pytest.raises(EnsembleIOError):
            read_ensemble(tmp_path / "missing.csv")

    def test_missing_columns(self, tmp_path: Path):
        path = tmp_path / "bad.csv"
        path.write_text("index,weight,g0\n0,1,1\n", encoding="utf-8")

        with pytest.raises(EnsembleIOError, match="lacks columns"):
            read_ensemble(path)

    def test_invalid_weights(self, tmp_path: Path):
        path = tmp_path / "bad.csv"
        path.write_text("index,weight,g0,g1,g2,phi\n0,0.5,1,1,1,0\n", encoding="utf-8")

        with pytest.raises(EnsembleIOError, match="invalid"):
            read_ensemble(path)
