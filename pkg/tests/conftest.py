"""Shared fixtures for the cogjam test suite."""

from pathlib import Path
import logging

import numpy as np
import pytest
import yaml

from cogjam.channel.sampling import sample_rayleigh
from cogjam.config import RayleighConfig
from cogjam.models.channel import FadingState, StateEnsemble
from cogjam.models.policy import NoiseModel
from cogjam.numopt.ellipsoid import EllipsoidSettings


@pytest.fixture
def noise() -> NoiseModel:
    """Unit noise at both receivers."""
    return NoiseModel(sigma0_sq=1.0, sigma1_sq=1.0)


@pytest.fixture
def ladder_ensemble() -> StateEnsemble:
    """
    Four equally likely states with required powers -0.5, 1, 2 and 4.

    With unit noise and g1 = g2 = 1 the required power is g0 - 1.
    """
    return StateEnsemble.from_states(
        [
            FadingState(g0=0.5, g1=1.0, g2=1.0),
            FadingState(g0=2.0, g1=1.0, g2=1.0),
            FadingState(g0=3.0, g1=1.0, g2=1.0),
            FadingState(g0=5.0, g1=1.0, g2=1.0),
        ]
    )


@pytest.fixture
def rayleigh_small() -> StateEnsemble:
    """Normalized Rayleigh ensemble small enough for the dual solvers."""
    return sample_rayleigh(RayleighConfig(n_states=80), seed=11)


@pytest.fixture
def fast_settings() -> EllipsoidSettings:
    """Ellipsoid settings that keep solver tests quick."""
    return EllipsoidSettings(size_tol=1e-6, max_iter=600, radius=1e3, max_restarts=1)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20160601)


@pytest.fixture
def small_config_file(tmp_path: Path) -> Path:
    """Config for a quick Rayleigh outage sweep."""
    config = {
        "experiment": {
            "name": "small",
            "scenario": "rayleigh",
            "seed": 5,
            "n_states": 300,
            "output_dir": str(tmp_path / "results"),
        },
        "power": {"q_sweep": [0.0, 10.0, 20.0]},
        "solvers": {"optimal": "outage"},
    }
    path = tmp_path / "small.yaml"
    path.write_text(yaml.safe_dump(config), encoding="utf-8")
    return path


@pytest.fixture(autouse=True)
def reset_package_logger():
    """Drop handlers bound to streams that outlive a test (e.g. CliRunner's)."""
    yield
    logging.getLogger("cogjam").handlers = []
