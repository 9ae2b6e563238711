"""
CSV report writer for experiment results.
Every file has a header row, a fixed column order and 17 significant digits.
"""

from pathlib import Path
from typing import Iterable, Sequence
import logging

import pandas as pd

from ..models.policy import EVAL_COLUMNS, EvalReport
from ..models.solutions import BetaScanPoint, OnlineTrace
from ..utils.exceptions import ReportGenerationError

logger = logging.getLogger(__name__)

FLOAT_FORMAT = "%.17g"
SWEEP_P_COLUMNS = ["P", "relative_rate_fixed", "relative_rate_waterfilling"]
BETA_SCAN_COLUMNS = ["beta", "t_achieved", "feasible_tmax", "avg_jam_power"]
TRACE_COLUMNS = ["block", "tau", "q_used", "success", "running_avg_power"]


class CsvReportWriter:
    """Writes sweep, scan and trace tables into one output directory."""

    def __init__(self, output_dir: Path):
        """
        Initialize the writer.

        Args:
            output_dir: Directory the CSV files are written to
        """
        self.output_dir = Path(output_dir)

    def write_frame(self, frame: pd.DataFrame, filename: str) -> Path:
        """
        Write a table as CSV.

        Raises:
            ReportGenerationError: If the file cannot be written
        """
        path = self.output_dir / filename
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            frame.to_csv(path, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
        except OSError as e:
            raise ReportGenerationError(f"Failed to write report {path}: {e}") from e
        logger.info(f"Report saved: {path} ({len(frame)} rows)")
        return path

    def write_eval_reports(self, reports: Iterable[EvalReport], filename: str) -> Path:
        """One row per (Q, scheme) evaluation."""
        frame = pd.DataFrame([r.as_row() for r in reports], columns=EVAL_COLUMNS)
        return self.write_frame(frame, filename)

    def write_sweep_p(self, rows: Sequence[tuple[float, float, float]], filename: str) -> Path:
        """Relative rate under fixed and water-filling transmitters per P."""
        frame = pd.DataFrame(list(rows), columns=SWEEP_P_COLUMNS)
        return self.write_frame(frame, filename)

    def write_beta_scan(self, points: Iterable[BetaScanPoint], filename: str) -> Path:
        frame = pd.DataFrame(
            [(p.beta, p.t_achieved, p.feasible_tmax, p.avg_jam_power) for p in points],
            columns=BETA_SCAN_COLUMNS,
        )
        return self.write_frame(frame, filename)

    def write_online_trace(self, trace: OnlineTrace, filename: str) -> Path:
        frame = pd.DataFrame(
            {
                "block": range(1, len(trace) + 1),
                "tau": trace.tau,
                "q_used": trace.q_used,
                "success": trace.success.astype(int),
                "running_avg_power": trace.running_avg,
            },
            columns=TRACE_COLUMNS,
        )
        return self.write_frame(frame, filename)
