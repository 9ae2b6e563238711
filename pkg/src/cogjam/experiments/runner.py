"""
Experiment orchestration for sweeps, beta scans, online runs and ensembles.
Builds the seeded ensemble once, runs the configured solvers and baselines
and writes every table through the CSV report writer.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Optional, Sequence, TypeVar
import logging
import math

from ..channel.io import write_ensemble
from ..channel.sampling import sample_geometric, sample_rayleigh
from ..config import ExperimentConfig, OptimalSolver
from ..metrics.baselines import JammingScheme, build_schemes
from ..metrics.evaluation import evaluate_policy
from ..models.channel import StateEnsemble
from ..models.policy import EvalReport, JammingPolicy, TxPowerProfile
from ..online.threshold import run_online
from ..reports.csv_writer import CsvReportWriter
from ..solvers.fixed import solve_fixed
from ..solvers.outage import solve_outage
from ..solvers.waterfill import solve_wf, waterfill
from ..utils.exceptions import CogJamError, SolverError
from .checks import check_dominance, check_monotone, check_ordering, check_unimodal

logger = logging.getLogger(__name__)

T = TypeVar("T")

OUTAGE_TOL = 1e-6
RATE_TOL = 0.02
FIXED_VS_WF_TOL = 0.01
ONLINE_THRESHOLD_RTOL = 0.2


@dataclass
class RunResult:
    """Files written by one run, the rows behind them and any post-hoc warnings."""

    command: str
    files: list[Path] = field(default_factory=list)
    reports: list[EvalReport] = field(default_factory=list)
    summary: dict[str, str] = field(default_factory=dict)
    warnings: list[str] = field(default_factory=list)


class PartialRunError(CogJamError):
    """A sweep failed part-way; completed rows were already written."""

    def __init__(self, cause: Exception, result: RunResult):
        super().__init__(str(cause))
        self.cause = cause
        self.result = result


def _as_package_error(value: float, error: Exception) -> CogJamError:
    if isinstance(error, CogJamError):
        return error
    logger.error(f"Sweep point {value:g} raised {type(error).__name__}: {error}")
    wrapped = SolverError(f"Sweep point {value:g} failed: {type(error).__name__}: {error}")
    wrapped.__cause__ = error
    return wrapped


class ExperimentRunner:
    """
    Runs one experiment configuration.

    The ensemble is sampled once from the configured seed and reused by
    every command, so two runs with the same config produce identical CSVs.
    """

    def __init__(
        self,
        config: ExperimentConfig,
        output_dir: Optional[Path] = None,
        threads: Optional[int] = None,
    ):
        """
        Initialize the runner.

        Args:
            config: Validated experiment configuration
            output_dir: Overrides the configured output directory
            threads: Overrides the configured worker count
        """
        self.config = config
        self.noise = config.noise_model()
        self.settings = config.solvers.ellipsoid.to_settings()
        self.threads = threads or config.solvers.threads
        self.output_dir = Path(output_dir or config.experiment.output_dir)
        self.writer = CsvReportWriter(self.output_dir)
        self.schemes: list[JammingScheme] = build_schemes(config.solvers.baselines)
        self._ensemble: Optional[StateEnsemble] = None

    @property
    def name(self) -> str:
        return self.config.experiment.name

    def build_ensemble(self) -> StateEnsemble:
        """Sample (once) the ensemble of the configured scenario and seed."""
        if self._ensemble is None:
            experiment = self.config.experiment
            if self.config.geometric:
                self._ensemble = sample_geometric(
                    self.config.channel.geometry, experiment.n_states, experiment.seed
                )
            else:
                self._ensemble = sample_rayleigh(self.config.rayleigh_config(), experiment.seed)
        return self._ensemble

    def _map(
        self, func: Callable[[float], T], values: Sequence[float]
    ) -> tuple[list[T], Optional[Exception]]:
        """
        Apply func over sweep values in order; stop at the first failure.

        Errors outside the package hierarchy come back wrapped in a
        SolverError, so the caller still writes the rows finished so far.
        """
        results: list[T] = []
        if self.threads > 1 and len(values) > 1:
            with ThreadPoolExecutor(max_workers=self.threads) as pool:
                futures = [pool.submit(func, v) for v in values]
                for value, future in zip(values, futures):
                    try:
                        results.append(future.result())
                    except Exception as e:
                        for pending in futures:
                            pending.cancel()
                        return results, _as_package_error(value, e)
            return results, None
        for value in values:
            try:
                results.append(func(value))
            except Exception as e:
                return results, _as_package_error(value, e)
        return results, None

    def _tx_profile(
        self, ensemble: StateEnsemble, policy: JammingPolicy, power: float, waterfilling: bool
    ) -> TxPowerProfile:
        if waterfilling:
            return waterfill(ensemble, policy, power, self.noise).to_tx_profile()
        return TxPowerProfile.fixed(len(ensemble), power)

    def _evaluate(
        self,
        ensemble: StateEnsemble,
        policy: JammingPolicy,
        label: str,
        q_value: float,
        power: float,
        waterfilling: bool = False,
    ) -> EvalReport:
        tx = self._tx_profile(ensemble, policy, power, waterfilling)
        return evaluate_policy(ensemble, policy, tx, self.noise).with_label(label, q_value)

    def _optimal_policy(
        self, ensemble: StateEnsemble, budget: float, power: float
    ) -> JammingPolicy:
        solver = self.config.solvers.optimal
        if solver in (OptimalSolver.OUTAGE, OptimalSolver.OUTAGE_SI):
            return solve_outage(
                ensemble, budget, self.noise, si=solver is OptimalSolver.OUTAGE_SI
            ).policy
        if solver is OptimalSolver.FIXED:
            return solve_fixed(
                ensemble, power, self.noise, budget, self.config.solvers.t_tol, self.settings
            ).policy
        return solve_wf(
            ensemble,
            power,
            self.noise,
            budget,
            beta_grid_size=self.config.solvers.beta_grid_size,
            t_tol=self.config.solvers.t_tol,
            refine=self.config.solvers.beta_refine,
            settings=self.settings,
        ).policy

    def sweep_q(self) -> RunResult:
        """
        Evaluate the optimal solver and the baselines at every swept Q.

        Returns:
            RunResult with one EvalReport per (Q, scheme)

        Raises:
            PartialRunError: If a solver fails; rows of earlier Q are written
        """
        solver = self.config.solvers.optimal
        ensemble = self.build_ensemble()
        if solver is not OptimalSolver.OUTAGE_SI:
            ensemble = ensemble.with_perfect_sic()
        power = self.config.transmit_power()
        waterfilling = solver is OptimalSolver.WATERFILLING
        optimal_label = "optimal-si" if solver is OptimalSolver.OUTAGE_SI else "optimal"

        def point(q_value: float) -> list[EvalReport]:
            budget = self.config.jam_budget(q_value)
            rows = [
                self._evaluate(
                    ensemble,
                    self._optimal_policy(ensemble, budget, power),
                    optimal_label,
                    q_value,
                    power,
                    waterfilling,
                )
            ]
            for scheme in self.schemes:
                policy = scheme.policy(ensemble, budget, self.noise)
                rows.append(
                    self._evaluate(ensemble, policy, scheme.name, q_value, power, waterfilling)
                )
            logger.info(f"Sweep point Q={q_value:g} {self.config.unit} done")
            return rows

        points, error = self._map(point, self.config.power.q_sweep)
        result = RunResult(command="sweep-q", reports=[r for rows in points for r in rows])
        result.files.append(
            self.writer.write_eval_reports(result.reports, f"{self.name}_sweep_q.csv")
        )
        if error is not None:
            raise PartialRunError(error, result)

        outage = solver in (OptimalSolver.OUTAGE, OptimalSolver.OUTAGE_SI)
        objective = (lambda r: r.non_outage_prob) if outage else (lambda r: r.relative_rate)
        tol = OUTAGE_TOL if outage else RATE_TOL
        result.warnings += check_dominance(points, optimal_label, objective, tol)
        result.warnings += check_monotone(
            [objective(rows[0]) for rows in points], f"{optimal_label} objective", tol
        )
        return result

    def sweep_p(self) -> RunResult:
        """Relative rate under fixed and water-filling transmitters across P at fixed Q."""
        ensemble = self.build_ensemble().with_perfect_sic()
        budget = self.config.jam_budget(self.config.power.q_fixed)
        solvers = self.config.solvers

        def point(p_value: float) -> tuple[float, float, float]:
            power = self.config.transmit_power(p_value)
            fixed = solve_fixed(ensemble, power, self.noise, budget, solvers.t_tol, self.settings)
            wf = solve_wf(
                ensemble,
                power,
                self.noise,
                budget,
                beta_grid_size=solvers.beta_grid_size,
                t_tol=solvers.t_tol,
                refine=solvers.beta_refine,
                settings=self.settings,
            )
            logger.info(f"Sweep point P={p_value:g} {self.config.unit} done")
            return p_value, fixed.t_star, wf.t_star

        rows, error = self._map(point, self.config.power.p_sweep)
        result = RunResult(command="sweep-p")
        result.files.append(self.writer.write_sweep_p(rows, f"{self.name}_sweep_p.csv"))
        if error is not None:
            raise PartialRunError(error, result)

        result.warnings += check_ordering(
            [r[1] for r in rows],
            [r[2] for r in rows],
            "fixed-power relative rate >= water-filling relative rate",
            FIXED_VS_WF_TOL,
        )
        for p_value, fixed, wf in rows:
            result.summary[f"P={p_value:g}"] = f"fixed {fixed:.4f} / water-filling {wf:.4f}"
        return result

    def beta_scan(self) -> RunResult:
        """Achieved relative rate across the feasible beta regime at one Q."""
        ensemble = self.build_ensemble().with_perfect_sic()
        solvers = self.config.solvers
        solution = solve_wf(
            ensemble,
            self.config.transmit_power(),
            self.noise,
            self.config.jam_budget(solvers.beta_scan_q),
            beta_grid_size=solvers.beta_grid_size,
            t_tol=solvers.t_tol,
            refine=solvers.beta_refine,
            settings=self.settings,
            threads=self.threads,
        )
        result = RunResult(command="beta-scan")
        result.files.append(
            self.writer.write_beta_scan(solution.beta_scan, f"{self.name}_beta_scan.csv")
        )
        result.warnings += check_unimodal(
            [p.t_achieved for p in solution.beta_scan], "achieved relative rate over beta"
        )
        result.summary = {
            "beta_min": f"{solution.beta_min:.6g}",
            "beta_max": f"{solution.beta_max:.6g}",
            "beta*": f"{solution.beta_star:.6g}",
            "t*": f"{solution.t_star:.4f}",
        }
        return result

    def online(self) -> RunResult:
        """
        Online threshold trace at one Q and a comparison table across the Q sweep.

        The comparison holds the optimal policy with and without residual
        self-interference, the online policy and the baselines, all under
        fixed transmit power.
        """
        ensemble = self.build_ensemble()
        power = self.config.transmit_power()
        section = self.config.online
        result = RunResult(command="online")

        trace_budget = self.config.jam_budget(section.trace_q)
        trace_config = self.config.online_config(
            trace_budget, n_blocks=min(section.n_blocks or len(ensemble), len(ensemble))
        )
        trace = run_online(ensemble, self.noise, trace_config)
        result.files.append(self.writer.write_online_trace(trace, f"{self.name}_online_trace.csv"))

        summary = trace.summary(trace_config.tail_fraction)
        reference = solve_outage(ensemble, trace_budget, self.noise, si=True)
        result.summary = {
            "online non-outage": f"{summary.non_outage:.4f}",
            "optimal-si non-outage": f"{reference.non_outage:.4f}",
            "tail threshold": f"{summary.tail_mean_threshold:.6g}",
            "optimal threshold": f"{reference.threshold:.6g}",
        }
        if math.isfinite(reference.threshold) and abs(
            summary.tail_mean_threshold - reference.threshold
        ) > ONLINE_THRESHOLD_RTOL * reference.threshold:
            message = (
                f"Online threshold {summary.tail_mean_threshold:.6g} is more than "
                f"{ONLINE_THRESHOLD_RTOL:.0%} away from the optimal {reference.threshold:.6g}"
            )
            logger.warning(message)
            result.warnings.append(message)

        perfect = ensemble.with_perfect_sic()

        def point(q_value: float) -> list[EvalReport]:
            budget = self.config.jam_budget(q_value)
            with_si = solve_outage(ensemble, budget, self.noise, si=True)
            without_si = solve_outage(perfect, budget, self.noise, si=False)
            online = run_online(
                ensemble, self.noise, self.config.online_config(budget, n_blocks=len(ensemble))
            )
            rows = [
                self._evaluate(ensemble, with_si.policy, "optimal-si", q_value, power),
                self._evaluate(perfect, without_si.policy, "optimal-no-si", q_value, power),
                self._evaluate(ensemble, online.to_policy(), "online", q_value, power),
            ]
            for scheme in self.schemes:
                policy = scheme.policy(ensemble, budget, self.noise)
                rows.append(self._evaluate(ensemble, policy, scheme.name, q_value, power))
            logger.info(f"Comparison point Q={q_value:g} {self.config.unit} done")
            return rows

        points, error = self._map(point, self.config.power.q_sweep)
        result.reports = [r for rows in points for r in rows]
        result.files.append(
            self.writer.write_eval_reports(result.reports, f"{self.name}_online_comparison.csv")
        )
        if error is not None:
            raise PartialRunError(error, result)

        result.warnings += check_ordering(
            [rows[1].non_outage_prob for rows in points],
            [rows[0].non_outage_prob for rows in points],
            "optimal-no-si >= optimal-si non-outage",
            OUTAGE_TOL,
        )
        return result

    def gen_ensemble(self) -> RunResult:
        """Write the sampled ensemble as CSV."""
        ensemble = self.build_ensemble()
        path = write_ensemble(ensemble, self.output_dir / f"{self.name}_ensemble.csv")
        return RunResult(
            command="gen-ensemble",
            files=[path],
            summary={"states": str(len(ensemble)), "label": ensemble.label},
        )
