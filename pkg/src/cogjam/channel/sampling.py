"""
Reproducible fading ensembles.

Randomness comes from numpy's PCG64 bit generator. Every link draws from
its own substream, seeded by SeedSequence(entropy=seed, spawn_key=(link,)),
so adding or removing one link never shifts the samples of another.
Exponential gains use the inverse CDF -mean * log(1 - u) on 53-bit
uniforms from Generator.random.
"""

from typing import Any, Mapping, TypeVar, Union
import logging

import numpy as np
from pydantic import BaseModel, ValidationError

from ..config import GeometryConfig, RayleighConfig
from ..models.channel import StateEnsemble
from ..utils.exceptions import ConfigurationError
from ..utils.units import db_to_linear

logger = logging.getLogger(__name__)

# Substream index per link
LINK_G0 = 0
LINK_G1 = 1
LINK_G2 = 2
LINK_LOOPBACK = 3

ConfigT = TypeVar("ConfigT", bound=BaseModel)


def link_generator(seed: int, link: int) -> np.random.Generator:
    """Independent generator for one link of one seeded ensemble."""
    sequence = np.random.SeedSequence(entropy=seed, spawn_key=(link,))
    return np.random.Generator(np.random.PCG64(sequence))


def exponential_gains(seed: int, link: int, mean: float, n_states: int) -> np.ndarray:
    """
    Draw |h|^2 for a zero-mean circular complex Gaussian h with E|h|^2 = mean.

    Returns strictly positive, finite gains.
    """
    u = link_generator(seed, link).random(n_states)
    # u == 0 would give a zero gain
    u = np.where(u == 0.0, 2.0**-54, u)
    return -mean * np.log1p(-u)


def _coerce(model: type[ConfigT], config: Union[ConfigT, Mapping[str, Any]]) -> ConfigT:
    if isinstance(config, model):
        return config
    try:
        return model.model_validate(config)
    except ValidationError as e:
        raise ConfigurationError(f"Invalid {model.__name__}: {e}") from e


def _check_seed(seed: int) -> int:
    if isinstance(seed, bool) or not isinstance(seed, (int, np.integer)) or seed < 0:
        raise ConfigurationError(f"Seed must be a non-negative integer, got {seed!r}")
    return int(seed)


def sample_rayleigh(
    config: Union[RayleighConfig, Mapping[str, Any]], seed: int
) -> StateEnsemble:
    """
    Sample the normalized Rayleigh setup with perfect self-interference cancellation.

    Args:
        config: Variances of h0, h1, h2 and the number of states
        seed: Non-negative RNG seed

    Returns:
        Uniformly weighted ensemble with phi = 0

    Raises:
        ConfigurationError: If the config or seed is invalid
    """
    config = _coerce(RayleighConfig, config)
    seed = _check_seed(seed)
    n = config.n_states

    ensemble = StateEnsemble.uniform(
        g0=exponential_gains(seed, LINK_G0, config.var0, n),
        g1=exponential_gains(seed, LINK_G1, config.var1, n),
        g2=exponential_gains(seed, LINK_G2, config.var2, n),
        phi=np.zeros(n),
        seed=seed,
        label=f"rayleigh(var0={config.var0:g}, var1={config.var1:g}, var2={config.var2:g})",
    )
    logger.info(f"Sampled {n} Rayleigh fading states (seed {seed})")
    return ensemble


def sample_geometric(
    config: Union[GeometryConfig, Mapping[str, Any]], n_states: int, seed: int
) -> StateEnsemble:
    """
    Sample Rayleigh fading on top of distance-based pathloss.

    The loop-back gain is a fixed (or, with `loopback_fading`, Rayleigh
    faded) co-located gain, or a pathloss-scaled Rayleigh draw over the
    inter-antenna distance for separate antennas; in both cases it is
    divided by the cancellation factor 10^(sic_db/10).

    Args:
        config: Node positions, pathloss and cancellation parameters
        n_states: Number of fading states
        seed: Non-negative RNG seed

    Returns:
        Uniformly weighted ensemble

    Raises:
        ConfigurationError: If the config, n_states or seed is invalid
    """
    config = _coerce(GeometryConfig, config)
    seed = _check_seed(seed)
    if isinstance(n_states, bool) or not isinstance(n_states, (int, np.integer)) or n_states < 1:
        raise ConfigurationError(f"n_states must be a positive integer, got {n_states!r}")
    n = int(n_states)

    g0 = exponential_gains(seed, LINK_G0, config.mean_gain(config.distance("tx", "rx")), n)
    g1 = exponential_gains(seed, LINK_G1, config.mean_gain(config.distance("tx", "eavesdrop")), n)
    g2 = exponential_gains(seed, LINK_G2, config.mean_gain(config.distance("jammer", "rx")), n)

    loopback_mean = config.mean_loopback()
    if config.colocated and not config.loopback_fading:
        loopback = np.full(n, loopback_mean)
    else:
        loopback = exponential_gains(seed, LINK_LOOPBACK, loopback_mean, n)
    phi = loopback / db_to_linear(config.sic_db)

    layout = "colocated" if config.colocated else "separate"
    ensemble = StateEnsemble.uniform(
        g0=g0, g1=g1, g2=g2, phi=phi, seed=seed, label=f"geometric-{layout}"
    )
    logger.info(
        f"Sampled {n} geometric fading states ({layout} monitor, "
        f"mean phi {config.mean_phi():.3g}, seed {seed})"
    )
    return ensemble
