"""Tests for probe-based learning and the threshold-adaptation online algorithm."""

import math

import numpy as np
import pytest

from cogjam.channel.sampling import sample_rayleigh
from cogjam.config import OnlineConfig, RayleighConfig, ThresholdUpdate
from cogjam.models.channel import FadingState, StateEnsemble
from cogjam.models.solutions import OnlineTrace
from cogjam.online import ProbeOracle, learn_required, probe_required, run_online
from cogjam.solvers import required_power, solve_outage
from cogjam.utils.exceptions import ContractError


@pytest.fixture
def blocks():
    return sample_rayleigh(RayleighConfig(n_states=400), seed=3)


class TestProbing:
    def test_learns_required_power(self, rng, noise):
        checked = 0
        for _ in range(200):
            state = FadingState(
                g0=float(rng.exponential(1.0)),
                g1=float(rng.exponential(0.1)),
                g2=float(rng.exponential(0.1)),
            )
            c = float(required_power(state, noise))
            if not 0.02 < c <= 1e5:
                continue
            checked += 1

            result = probe_required(state, noise)

            assert c <= result.value
            assert result.value == pytest.approx(c, rel=1.1e-3)
        assert checked > 20

    def test_probe_count_is_bounded(self, rng, noise):
        start, cap, tol = 1e-2, 1e6, 1e-3
        bound = 2 + math.log2(cap / start) + math.ceil(math.log2(1.0 / tol))
        for _ in range(100):
            state = FadingState(
                g0=float(rng.exponential(1.0)),
                g1=float(rng.exponential(0.1)),
                g2=float(rng.exponential(0.1)),
            )

            result = probe_required(state, noise, tol, cap, start)

            assert result.probes <= bound

    def test_free_state_needs_one_probe(self, noise):
        result = probe_required(FadingState(g0=0.5, g1=1.0, g2=1.0), noise)

        assert result.value == 0.0
        assert result.probes == 1

    def test_unreachable_state(self, noise):
        result = probe_required(FadingState(g0=2.0, g1=1.0, g2=1e-9), noise)

        assert result.value == math.inf

    def test_oracle_counts_queries(self, noise):
        oracle = ProbeOracle(FadingState(g0=2.0, g1=1.0, g2=1.0), noise)

        assert not oracle.succeeds(0.5)
        assert oracle.succeeds(1.0)
        assert oracle.probes == 2

    def test_small_requirement_meets_tolerance(self, noise):
        state = FadingState(g0=1.0001, g1=1.0, g2=1.0)
        c = float(required_power(state, noise))

        result = probe_required(state, noise, 1e-3, 1e6, 1e-2)

        assert c * (1.0 - 1e-9) <= result.value <= c * (1.0 + 1.01e-3)

    def test_requirement_between_last_doubling_and_cap(self, noise):
        oracle = ProbeOracle(FadingState(g0=2.4, g1=1.0, g2=1.0), noise)

        result = learn_required(oracle, 1.0, 1e-3, 1.5)

        assert result.value == pytest.approx(1.4, rel=1.1e-3)

    def test_requirement_above_cap(self, noise):
        oracle = ProbeOracle(FadingState(g0=2.6, g1=1.0, g2=1.0), noise)

        assert learn_required(oracle, 1.0, 1e-3, 1.5).value == math.inf

    @pytest.mark.parametrize(
        "start,tol,cap", [(0.0, 1e-3, 1.0), (1.0, 1e-3, 0.5), (1.0, 0.0, 10.0), (1.0, 1.0, 10.0)]
    )
    def test_invalid_schedule(self, noise, start, tol, cap):
        oracle = ProbeOracle(FadingState(g0=2.0, g1=1.0, g2=1.0), noise)

        with pytest.raises(ContractError, match="Invalid probe schedule"):
            learn_required(oracle, start, tol, cap)


class TestRunOnline:
    def test_too_few_blocks(self, ladder_ensemble, noise):
        config = OnlineConfig.for_budget(1.0, n_blocks=5)

        with pytest.raises(ContractError, match="needs 5 blocks"):
            run_online(ladder_ensemble, noise, config)

    @pytest.mark.parametrize("update", list(ThresholdUpdate))
    def test_threshold_updates_replay(self, blocks, noise, update):
        config = OnlineConfig.for_budget(1.0, n_blocks=len(blocks), update=update)

        trace = run_online(blocks, noise, config)

        tau = config.tau_init
        total = 0.0
        for i in range(len(blocks)):
            learned = probe_required(
                blocks[i], noise, config.probe_tol, config.probe_cap, config.probe_start
            )
            jam = 0.0 < learned.value <= tau
            assert trace.tau[i] == tau
            assert trace.q_used[i] == (learned.value if jam else 0.0)
            assert bool(trace.success[i]) == (jam or learned.value == 0.0)
            assert trace.probes[i] == learned.probes
            total += trace.q_used[i]
            if update is ThresholdUpdate.BUDGET_SLACK:
                tau = max(tau + config.chi * (1.0 - trace.q_used[i]), 0.0)
            elif trace.running_avg[i] < config.budget:
                tau += config.chi
            else:
                tau = max(tau - config.chi, 0.0)
            assert trace.running_avg[i] == pytest.approx(total / (i + 1))

    @pytest.mark.parametrize("update", list(ThresholdUpdate))
    def test_cheap_blocks_raise_the_threshold(self, noise, update):
        blocks = [FadingState(g0=1.5, g1=1.0, g2=1.0)] * 20
        config = OnlineConfig.for_budget(1.0, n_blocks=20, update=update)

        trace = run_online(blocks, noise, config)

        assert trace.success.all()
        assert trace.q_used == pytest.approx(np.full(20, 0.5), rel=1.1e-3)
        steps = np.diff(trace.tau)
        if update is ThresholdUpdate.RUNNING_AVERAGE:
            assert steps == pytest.approx(np.full(19, config.chi))
        else:
            assert steps == pytest.approx(config.chi * (1.0 - trace.q_used[:-1]))

    def test_zero_threshold_never_jams(self, blocks, noise):
        config = OnlineConfig.for_budget(
            1.0, n_blocks=len(blocks), tau_init_factor=0.0, chi_factor=0.0
        )

        trace = run_online(blocks, noise, config)

        c = np.asarray(required_power(blocks, noise))
        assert np.all(trace.q_used == 0.0)
        assert np.array_equal(trace.success, c <= 0.0)

    def test_uses_only_the_first_blocks(self, blocks, noise):
        trace = run_online(blocks, noise, OnlineConfig.for_budget(1.0, n_blocks=50))

        assert len(trace) == 50

    def test_threshold_settles_at_optimal_threshold(self, noise):
        # Required powers uniform on (0, 4]: spending Q = 0.5 on average takes tau = 2
        gen = np.random.default_rng(5)
        n = 10000
        blocks = StateEnsemble.uniform(
            g0=1.0 + gen.uniform(0.0, 4.0, n), g1=np.ones(n), g2=np.ones(n), seed=5
        )
        config = OnlineConfig.for_budget(0.5, n_blocks=n, chi_factor=2e-2)

        trace = run_online(blocks, noise, config)

        optimal = solve_outage(blocks, 0.5, noise)
        summary = trace.summary(config.tail_fraction)
        assert optimal.threshold == pytest.approx(2.0, rel=0.05)
        assert summary.tail_mean_threshold == pytest.approx(optimal.threshold, rel=0.1)
        assert trace.tau[-1000:].min() > 0.7 * optimal.threshold
        assert trace.tau[-1000:].max() < 1.3 * optimal.threshold
        assert summary.avg_power == pytest.approx(0.5, rel=0.05)
        assert abs(summary.non_outage - optimal.non_outage) <= 0.02

    def test_accepts_plain_state_lists(self, ladder_ensemble, noise):
        states = [ladder_ensemble[i] for i in range(len(ladder_ensemble))]

        trace = run_online(states, noise, OnlineConfig.for_budget(10.0, n_blocks=4))

        # tau starts at 20, so every positive requirement is met
        assert np.allclose(trace.q_used, [0.0, 1.0, 2.0, 4.0], rtol=1.1e-3)
        assert trace.success.all()


class TestOnlineConfig:
    def test_scales_with_budget(self):
        config = OnlineConfig.for_budget(4.0, n_blocks=10)

        assert config.tau_init == 8.0
        assert config.chi == pytest.approx(4e-3)
        assert config.probe_cap == 4e6
        assert config.probe_start == pytest.approx(0.04)

    def test_zero_budget(self):
        config = OnlineConfig.for_budget(0.0, n_blocks=10)

        assert config.tau_init == 0.0
        assert config.probe_cap == 1e6
        assert config.probe_start > 0.0


class TestOnlineTrace:
    @pytest.fixture
    def trace(self):
        return OnlineTrace(
            tau=np.arange(10, dtype=float),
            q_used=np.array([0.0, 1.0, 0.0, 2.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0]),
            success=np.array([True, True, False, True, False, False, True, False, True, True]),
            running_avg=np.linspace(0.1, 0.4, 10),
            probes=np.ones(10, dtype=np.int64),
        )

    def test_summary(self, trace):
        summary = trace.summary(0.2)

        assert summary.non_outage == pytest.approx(0.6)
        assert summary.avg_power == pytest.approx(0.4)
        assert summary.tail_mean_threshold == pytest.approx(8.5)

    def test_tail_has_at_least_one_block(self, trace):
        assert trace.summary(0.01).tail_mean_threshold == 9.0

    def test_to_policy(self, trace):
        policy = trace.to_policy()

        assert policy.label == "online"
        assert np.array_equal(policy.q, trace.q_used)
