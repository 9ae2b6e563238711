"""
CSV serialization of state ensembles.

Columns are `index,weight,g0,g1,g2,phi`; floats are written with 17
significant digits so a round trip reproduces every value exactly.
"""

from pathlib import Path
from typing import Optional
import logging

import pandas as pd

from ..models.channel import StateEnsemble
from ..utils.exceptions import ContractError, EnsembleIOError

logger = logging.getLogger(__name__)

ENSEMBLE_COLUMNS = ["index", "weight", "g0", "g1", "g2", "phi"]
FLOAT_FORMAT = "%.17g"


def ensemble_to_frame(ensemble: StateEnsemble) -> pd.DataFrame:
    """Tabulate an ensemble in serialization column order."""
    return pd.DataFrame(
        {
            "index": range(len(ensemble)),
            "weight": ensemble.weights,
            "g0": ensemble.g0,
            "g1": ensemble.g1,
            "g2": ensemble.g2,
            "phi": ensemble.phi,
        },
        columns=ENSEMBLE_COLUMNS,
    )


def ensemble_to_csv(ensemble: StateEnsemble) -> str:
    """Serialized CSV text of an ensemble."""
    return ensemble_to_frame(ensemble).to_csv(
        index=False, float_format=FLOAT_FORMAT, lineterminator="\n"
    )


def write_ensemble(ensemble: StateEnsemble, path: Path) -> Path:
    """
    Write an ensemble to a CSV file.

    Raises:
        EnsembleIOError: If the file cannot be written
    """
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(ensemble_to_csv(ensemble), encoding="utf-8")
    except OSError as e:
        raise EnsembleIOError(f"Failed to write ensemble to {path}: {e}") from e
    logger.info(f"Wrote {len(ensemble)} states to {path}")
    return path


def read_ensemble(path: Path, seed: Optional[int] = None, label: str = "") -> StateEnsemble:
    """
    Read an ensemble written by write_ensemble.

    Args:
        path: CSV file
        seed: Seed to attach (the file does not store it)
        label: Label to attach (defaults to the file stem)

    Returns:
        StateEnsemble in file row order

    Raises:
        EnsembleIOError: If the file is missing, malformed or describes an
            invalid ensemble
    """
    try:
        df = pd.read_csv(path, float_precision="round_trip")
    except (OSError, pd.errors.ParserError, pd.errors.EmptyDataError) as e:
        raise EnsembleIOError(f"Failed to read ensemble from {path}: {e}") from e

    missing = [c for c in ENSEMBLE_COLUMNS if c not in df.columns]
    if missing:
        raise EnsembleIOError(f"Ensemble file {path} lacks columns: {', '.join(missing)}")

    df = df.sort_values("index", kind="stable")
    try:
        return StateEnsemble(
            g0=df["g0"].to_numpy(dtype=float),
            g1=df["g1"].to_numpy(dtype=float),
            g2=df["g2"].to_numpy(dtype=float),
            phi=df["phi"].to_numpy(dtype=float),
            weights=df["weight"].to_numpy(dtype=float),
            seed=seed,
            label=label or path.stem,
        )
    except ContractError as e:
        raise EnsembleIOError(f"Ensemble file {path} is invalid: {e}") from e
