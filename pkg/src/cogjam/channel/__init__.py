"""Fading ensemble generation and serialization."""

from ..config import GeometryConfig, RayleighConfig
from .sampling import exponential_gains, link_generator, sample_geometric, sample_rayleigh
from .io import (
    ENSEMBLE_COLUMNS,
    ensemble_to_csv,
    ensemble_to_frame,
    read_ensemble,
    write_ensemble,
)

__all__ = [
    "GeometryConfig",
    "RayleighConfig",
    "exponential_gains",
    "link_generator",
    "sample_geometric",
    "sample_rayleigh",
    "ENSEMBLE_COLUMNS",
    "ensemble_to_csv",
    "ensemble_to_frame",
    "read_ensemble",
    "write_ensemble",
]
