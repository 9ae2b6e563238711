"""Configuration models, presets and loader for jamming experiments."""

from enum import Enum
from importlib import resources
from pathlib import Path
from typing import Any, Literal, Optional
import logging
import math

import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from .models.policy import NoiseModel
from .numopt.ellipsoid import EllipsoidSettings
from .utils.exceptions import ConfigurationError
from .utils.units import db_to_linear, dbm_to_watts

logger = logging.getLogger(__name__)

Point = tuple[float, float]
BaselineName = Literal["constant", "onoff", "passive"]


class RayleighConfig(BaseModel):
    """Normalized Rayleigh fading: variances of the complex coefficients h0, h1, h2."""

    model_config = ConfigDict(frozen=True)

    var0: float = Field(default=1.0, gt=0)
    var1: float = Field(default=0.1, gt=0)
    var2: float = Field(default=0.1, gt=0)
    n_states: int = Field(default=10000, ge=1)


class GeometryConfig(BaseModel):
    """
    Node positions (meters) and pathloss model iota * (d / d0) ** -kappa.

    When the eavesdrop and jamming antennas share a position the monitor is
    co-located and the loop-back gain before cancellation is
    `colocated_loopback_db`; otherwise the loop-back link follows the
    pathloss model over the inter-antenna distance.
    """

    model_config = ConfigDict(frozen=True)

    tx: Point = (0.0, 0.0)
    rx: Point = (500.0, 0.0)
    eavesdrop: Point = (500.0, 500.0)
    jammer: Point = (500.0, 500.0)
    iota: float = Field(default=1e-6, gt=0)
    d0: float = Field(default=10.0, gt=0)
    kappa: float = Field(default=3.0, gt=0)
    sic_db: float = 110.0
    colocated_loopback_db: float = -15.0
    loopback_fading: bool = False

    @model_validator(mode="after")
    def _check_distances(self) -> "GeometryConfig":
        for first, second in (("tx", "rx"), ("tx", "eavesdrop"), ("jammer", "rx")):
            if self.distance(first, second) <= 0.0:
                raise ValueError(f"{first} and {second} must not share a position")
        return self

    @property
    def colocated(self) -> bool:
        return self.distance("eavesdrop", "jammer") == 0.0

    def distance(self, first: str, second: str) -> float:
        """Euclidean distance between two named nodes."""
        a: Point = getattr(self, first)
        b: Point = getattr(self, second)
        return math.hypot(a[0] - b[0], a[1] - b[1])

    def mean_gain(self, distance: float) -> float:
        """Mean channel power gain at a distance."""
        return self.iota * (distance / self.d0) ** (-self.kappa)

    def mean_loopback(self) -> float:
        """Mean loop-back gain before self-interference cancellation."""
        if self.colocated:
            return db_to_linear(self.colocated_loopback_db)
        return self.mean_gain(self.distance("eavesdrop", "jammer"))

    def mean_phi(self) -> float:
        """Mean effective loop-back gain after cancellation."""
        return self.mean_loopback() / db_to_linear(self.sic_db)


class ThresholdUpdate(str, Enum):
    """How the online threshold reacts to the power spent so far."""

    BUDGET_SLACK = "budget-slack"
    RUNNING_AVERAGE = "running-average"


class OnlineConfig(BaseModel):
    """
    Settings of the probe-and-threshold online jamming algorithm.

    With `budget-slack` the threshold moves by chi (Q - q)/Q after each
    block. With `running-average` it moves by +-chi on the sign of
    Q minus the running average power; that rule does not damp, so the
    threshold keeps swinging around its target by its initial offset.
    """

    model_config = ConfigDict(frozen=True)

    n_blocks: int = Field(default=100000, ge=1)
    tau_init: float = Field(ge=0)
    chi: float = Field(ge=0)
    budget: float = Field(ge=0)
    probe_tol: float = Field(default=1e-3, gt=0, lt=1)
    probe_cap: float = Field(gt=0)
    tail_fraction: float = Field(default=0.1, gt=0, le=1)
    update: ThresholdUpdate = ThresholdUpdate.BUDGET_SLACK

    @classmethod
    def for_budget(
        cls,
        budget: float,
        n_blocks: int,
        tau_init_factor: float = 2.0,
        chi_factor: float = 1e-3,
        probe_tol: float = 1e-3,
        probe_cap_factor: float = 1e6,
        tail_fraction: float = 0.1,
        update: ThresholdUpdate = ThresholdUpdate.BUDGET_SLACK,
    ) -> "OnlineConfig":
        """Scale threshold, step and probe cap with the average budget Q."""
        return cls(
            n_blocks=n_blocks,
            tau_init=tau_init_factor * budget,
            chi=chi_factor * budget,
            budget=budget,
            probe_tol=probe_tol,
            probe_cap=probe_cap_factor * budget if budget > 0 else probe_cap_factor,
            tail_fraction=tail_fraction,
            update=update,
        )

    @property
    def probe_start(self) -> float:
        """First non-zero probe power."""
        if self.budget > 0:
            return min(self.budget / 100.0, self.probe_cap)
        return self.probe_cap * 1e-8


class Scenario(str, Enum):
    """Channel setup an experiment samples from."""

    RAYLEIGH = "rayleigh"
    GEOMETRIC_COLOCATED = "geometric-colocated"
    GEOMETRIC_SEPARATE = "geometric-separate"


class OptimalSolver(str, Enum):
    """Which optimal jamming solver a sweep runs."""

    OUTAGE = "outage"
    OUTAGE_SI = "outage-si"
    FIXED = "fixed"
    WATERFILLING = "waterfilling"


class ExperimentSection(BaseModel):
    """Run identity, scenario and sampling."""

    name: str = "experiment"
    scenario: Scenario = Scenario.RAYLEIGH
    seed: int = Field(default=2016, ge=0, lt=2**64)
    n_states: int = Field(default=10000, ge=1)
    output_dir: str = "results"


class PowerSection(BaseModel):
    """Powers in dB (rayleigh) or dBm (geometric scenarios)."""

    transmit: float = 20.0
    noise0: float = 0.0
    noise1: float = 0.0
    q_sweep: list[float] = Field(
        default_factory=lambda: [0.0, 5.0, 10.0, 15.0, 20.0, 25.0, 30.0], min_length=1
    )
    p_sweep: list[float] = Field(
        default_factory=lambda: [0.0, 5.0, 10.0, 15.0, 20.0, 25.0, 30.0], min_length=1
    )
    q_fixed: float = 20.0


class RayleighVariances(BaseModel):
    """Variances of h0, h1, h2."""

    var0: float = Field(default=1.0, gt=0)
    var1: float = Field(default=0.1, gt=0)
    var2: float = Field(default=0.1, gt=0)


class ChannelSection(BaseModel):
    """Channel model parameters for both scenario families."""

    rayleigh: RayleighVariances = Field(default_factory=RayleighVariances)
    geometry: GeometryConfig = Field(default_factory=GeometryConfig)


class EllipsoidSection(BaseModel):
    """Cutting-plane dual search settings."""

    size_tol: float = Field(default=1e-7, gt=0)
    max_iter: int = Field(default=2000, ge=1)
    radius: float = Field(default=1e3, gt=0)
    max_restarts: int = Field(default=3, ge=0)

    def to_settings(self) -> EllipsoidSettings:
        return EllipsoidSettings(
            size_tol=self.size_tol,
            max_iter=self.max_iter,
            radius=self.radius,
            max_restarts=self.max_restarts,
        )


class SolversSection(BaseModel):
    """Solver selection and numerical settings."""

    optimal: OptimalSolver = OptimalSolver.OUTAGE
    baselines: list[BaselineName] = Field(
        default_factory=lambda: ["constant", "onoff", "passive"]
    )
    t_tol: float = Field(default=1e-3, gt=0, lt=1)
    beta_grid_size: int = Field(default=32, ge=3)
    beta_refine: bool = False
    beta_scan_q: float = 20.0
    threads: int = Field(default=1, ge=1)
    ellipsoid: EllipsoidSection = Field(default_factory=EllipsoidSection)


class OnlineSection(BaseModel):
    """Online algorithm settings relative to each swept budget Q."""

    trace_q: float = 30.0
    n_blocks: Optional[int] = Field(default=None, ge=1)
    tau_init_factor: float = Field(default=2.0, ge=0)
    chi_factor: float = Field(default=1e-3, ge=0)
    probe_tol: float = Field(default=1e-3, gt=0, lt=1)
    probe_cap_factor: float = Field(default=1e6, gt=0)
    tail_fraction: float = Field(default=0.1, gt=0, le=1)
    threshold_update: ThresholdUpdate = ThresholdUpdate.BUDGET_SLACK


class LoggingConfig(BaseModel):
    """Configuration for logging."""

    level: str = "INFO"
    format: str = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


class ExperimentConfig(BaseModel):
    """Main configuration model for an experiment run."""

    experiment: ExperimentSection = Field(default_factory=ExperimentSection)
    power: PowerSection = Field(default_factory=PowerSection)
    channel: ChannelSection = Field(default_factory=ChannelSection)
    solvers: SolversSection = Field(default_factory=SolversSection)
    online: OnlineSection = Field(default_factory=OnlineSection)
    logging: LoggingConfig = Field(default_factory=LoggingConfig)
    preset: Optional[str] = None
    config_file_path: Optional[str] = None

    @model_validator(mode="after")
    def _check_scenario_geometry(self) -> "ExperimentConfig":
        scenario = self.experiment.scenario
        colocated = self.channel.geometry.colocated
        if scenario is Scenario.GEOMETRIC_COLOCATED and not colocated:
            raise ValueError("geometric-colocated scenario needs eavesdrop == jammer position")
        if scenario is Scenario.GEOMETRIC_SEPARATE and colocated:
            raise ValueError("geometric-separate scenario needs distinct antenna positions")
        return self

    @property
    def geometric(self) -> bool:
        return self.experiment.scenario is not Scenario.RAYLEIGH

    @property
    def unit(self) -> str:
        return "dBm" if self.geometric else "dB"

    def to_linear(self, value: float) -> float:
        """Convert a power from config units (dB or dBm) to linear."""
        return dbm_to_watts(value) if self.geometric else db_to_linear(value)

    def transmit_power(self, value: Optional[float] = None) -> float:
        """Linear average transmit power P (the configured one by default)."""
        return self.to_linear(self.power.transmit if value is None else value)

    def jam_budget(self, value: float) -> float:
        """Linear average jamming budget Q for a sweep value."""
        return self.to_linear(value)

    def noise_model(self) -> NoiseModel:
        return NoiseModel(
            sigma0_sq=self.to_linear(self.power.noise0),
            sigma1_sq=self.to_linear(self.power.noise1),
        )

    def rayleigh_config(self) -> RayleighConfig:
        variances = self.channel.rayleigh
        return RayleighConfig(
            var0=variances.var0,
            var1=variances.var1,
            var2=variances.var2,
            n_states=self.experiment.n_states,
        )

    def online_config(self, budget: float, n_blocks: Optional[int] = None) -> OnlineConfig:
        """Online settings for a linear budget Q."""
        section = self.online
        blocks = n_blocks or section.n_blocks or self.experiment.n_states
        return OnlineConfig.for_budget(
            budget,
            n_blocks=blocks,
            tau_init_factor=section.tau_init_factor,
            chi_factor=section.chi_factor,
            probe_tol=section.probe_tol,
            probe_cap_factor=section.probe_cap_factor,
            tail_fraction=section.tail_fraction,
            update=section.threshold_update,
        )


def get_default_config() -> dict[str, Any]:
    """Return the default configuration as a dictionary."""
    return {
        "experiment": {
            "name": "experiment",
            "scenario": "rayleigh",
            "seed": 2016,
            "n_states": 10000,
            "output_dir": "results",
        },
        "power": {
            "transmit": 20.0,
            "noise0": 0.0,
            "noise1": 0.0,
            "q_sweep": [0.0, 5.0, 10.0, 15.0, 20.0, 25.0, 30.0],
            "p_sweep": [0.0, 5.0, 10.0, 15.0, 20.0, 25.0, 30.0],
            "q_fixed": 20.0,
        },
        "channel": {
            "rayleigh": {"var0": 1.0, "var1": 0.1, "var2": 0.1},
            "geometry": {
                "tx": [0.0, 0.0],
                "rx": [500.0, 0.0],
                "eavesdrop": [500.0, 500.0],
                "jammer": [500.0, 500.0],
                "iota": 1.0e-6,
                "d0": 10.0,
                "kappa": 3.0,
                "sic_db": 110.0,
                "colocated_loopback_db": -15.0,
                "loopback_fading": False,
            },
        },
        "solvers": {
            "optimal": "outage",
            "baselines": ["constant", "onoff", "passive"],
            "t_tol": 1.0e-3,
            "beta_grid_size": 32,
            "beta_refine": False,
            "beta_scan_q": 20.0,
            "threads": 1,
            "ellipsoid": {
                "size_tol": 1.0e-7,
                "max_iter": 2000,
                "radius": 1000.0,
                "max_restarts": 3,
            },
        },
        "online": {
            "trace_q": 30.0,
            "n_blocks": None,
            "tau_init_factor": 2.0,
            "chi_factor": 1.0e-3,
            "probe_tol": 1.0e-3,
            "probe_cap_factor": 1.0e6,
            "tail_fraction": 0.1,
            "threshold_update": "budget-slack",
        },
        "logging": {
            "level": "INFO",
            "format": "%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        },
    }


def list_presets() -> list[str]:
    """Names of the presets shipped with the package."""
    directory = resources.files("cogjam") / "presets"
    return sorted(
        entry.name[: -len(".yaml")]
        for entry in directory.iterdir()
        if entry.name.endswith(".yaml")
    )


def load_preset(name: str) -> dict[str, Any]:
    """
    Read a shipped preset as a dictionary.

    Args:
        name: Preset name such as "fig2"

    Returns:
        Preset overrides (to be merged onto the defaults)

    Raises:
        ConfigurationError: If the preset does not exist or is not valid YAML
    """
    resource = resources.files("cogjam") / "presets" / f"{name}.yaml"
    if not resource.is_file():
        raise ConfigurationError(
            f"Unknown preset '{name}'. Available: {', '.join(list_presets())}"
        )
    return _read_yaml(resource.read_text(encoding="utf-8"), f"preset {name}")


def load_config(
    config_path: Optional[Path] = None,
    preset: Optional[str] = None,
    overrides: Optional[dict[str, Any]] = None,
) -> ExperimentConfig:
    """
    Load configuration as defaults <- preset <- YAML file <- overrides.

    Args:
        config_path: Path to YAML configuration file (optional)
        preset: Name of a shipped preset (optional)
        overrides: Nested dictionary applied last, e.g. from CLI flags

    Returns:
        Validated ExperimentConfig

    Raises:
        ConfigurationError: If a source is missing, unreadable or invalid
    """
    config_dict = get_default_config()

    if preset:
        logger.info(f"Applying preset: {preset}")
        config_dict = _deep_merge(config_dict, load_preset(preset))
        config_dict["preset"] = preset

    if config_path:
        if not config_path.exists():
            raise ConfigurationError(f"Configuration file not found: {config_path}")
        logger.info(f"Loading configuration from: {config_path}")
        user_config = _read_yaml(config_path.read_text(encoding="utf-8"), str(config_path))
        config_dict = _deep_merge(config_dict, user_config)
        config_dict["config_file_path"] = str(config_path)
    elif not preset:
        logger.info("Using default configuration")

    if overrides:
        config_dict = _deep_merge(config_dict, overrides)

    try:
        return ExperimentConfig(**config_dict)
    except ValidationError as e:
        raise ConfigurationError(f"Invalid configuration: {e}") from e


def _read_yaml(text: str, source: str) -> dict[str, Any]:
    try:
        data = yaml.safe_load(text) or {}
    except yaml.YAMLError as e:
        raise ConfigurationError(f"Could not parse {source}: {e}") from e
    if not isinstance(data, dict):
        raise ConfigurationError(f"{source} must contain a mapping at the top level")
    return data


def _deep_merge(base: dict, override: dict) -> dict:
    """
    Deep merge two dictionaries.

    Args:
        base: Base dictionary
        override: Dictionary to merge on top

    Returns:
        Merged dictionary
    """
    result = base.copy()

    for key, value in override.items():
        if key in result and isinstance(result[key], dict) and isinstance(value, dict):
            result[key] = _deep_merge(result[key], value)
        else:
            result[key] = value

    return result


def generate_default_config(output_path: Path) -> None:
    """
    Generate a default configuration file.

    Args:
        output_path: Path to write the configuration file
    """
    yaml_content = """# Cognitive jamming experiment configuration
# Powers are in dB for the rayleigh scenario and in dBm for the geometric ones.

"""
    yaml_content += yaml.dump(get_default_config(), default_flow_style=False, sort_keys=False)

    output_path.parent.mkdir(parents=True, exist_ok=True)
    with open(output_path, "w") as f:
        f.write(yaml_content)

    logger.info(f"Generated configuration file: {output_path}")
