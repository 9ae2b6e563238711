"""
Command-line interface for the cognitive jamming experiments.
"""

from pathlib import Path
from typing import Callable, Optional
import functools
import logging
import sys
import traceback

import click
from rich.console import Console
from rich.markup import escape
from rich.progress import Progress, SpinnerColumn, TextColumn
from rich.table import Table

from . import __version__
from .config import generate_default_config, list_presets, load_config
from .experiments.runner import ExperimentRunner, PartialRunError, RunResult
from .utils.exceptions import CogJamError, ConfigurationError
from .utils.logging_config import setup_logging

console = Console()

EXIT_CONFIG_ERROR = 2
EXIT_SOLVER_ERROR = 3
SOLVER_ERROR_FILE = "solver_error.txt"


def experiment_options(func: Callable) -> Callable:
    """Options shared by every experiment command."""

    @click.option(
        "-c",
        "--config",
        type=click.Path(exists=True, path_type=Path),
        help="Path to configuration file (YAML)",
    )
    @click.option("-p", "--preset", type=str, default=None, help="Shipped preset, e.g. fig2")
    @click.option("--seed", type=click.IntRange(0, 2**64 - 1), default=None, help="RNG seed")
    @click.option("-o", "--out", type=click.Path(path_type=Path), help="Output directory")
    @click.option("--threads", type=click.IntRange(min=1), default=None, help="Worker threads")
    @click.option("-v", "--verbose", is_flag=True, help="Enable verbose output")
    @click.option("--log-file", type=click.Path(path_type=Path), help="Also log to this file")
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        return func(*args, **kwargs)

    return wrapper


@click.group()
@click.version_option(version=__version__)
def main():
    """Proactive eavesdropping via cognitive jamming: optimal and online jamming experiments."""
    pass


@main.command("sweep-q")
@experiment_options
def sweep_q(**options):
    """Evaluate the optimal solver and baselines across the jamming budget sweep."""
    _run("sweep-q", lambda runner: runner.sweep_q(), **options)


@main.command("sweep-p")
@experiment_options
def sweep_p(**options):
    """Compare fixed-power and water-filling relative rates across the transmit power sweep."""
    _run("sweep-p", lambda runner: runner.sweep_p(), **options)


@main.command("beta-scan")
@experiment_options
def beta_scan(**options):
    """Scan the water-filling parameter beta at one jamming budget."""
    _run("beta-scan", lambda runner: runner.beta_scan(), **options)


@main.command("online")
@experiment_options
def online(**options):
    """Run the online threshold algorithm and compare it with optimal jamming."""
    _run("online", lambda runner: runner.online(), **options)


@main.command("gen-ensemble")
@experiment_options
def gen_ensemble(**options):
    """Sample the configured fading ensemble and write it as CSV."""
    _run("gen-ensemble", lambda runner: runner.gen_ensemble(), **options)


@main.command("init-config")
@click.option(
    "-o", "--output", type=click.Path(path_type=Path), default=Path("config.yaml")
)
def init_config(output: Path):
    """Generate a sample configuration file."""
    generate_default_config(output)
    console.print(f"[green]Configuration file generated: {output}[/green]")


@main.command("list-presets")
def list_presets_command():
    """List the shipped experiment presets."""
    table = Table(title="Presets")
    table.add_column("Name", style="cyan")
    table.add_column("Experiment")
    table.add_column("Scenario")
    table.add_column("Solver")
    for name in list_presets():
        config = load_config(preset=name)
        table.add_row(
            name,
            config.experiment.name,
            config.experiment.scenario.value,
            config.solvers.optimal.value,
        )
    console.print(table)


def _run(
    command: str,
    action: Callable[[ExperimentRunner], RunResult],
    config: Optional[Path],
    preset: Optional[str],
    seed: Optional[int],
    out: Optional[Path],
    threads: Optional[int],
    verbose: bool,
    log_file: Optional[Path],
) -> None:
    """Load the configuration, run one experiment command and report the outcome."""
    setup_logging(logging.DEBUG if verbose else logging.INFO, log_file)

    overrides = {"experiment": {"seed": seed}} if seed is not None else None
    try:
        experiment_config = load_config(config, preset, overrides)
    except ConfigurationError as e:
        console.print(f"[red]Error: {escape(str(e))}[/red]")
        sys.exit(EXIT_CONFIG_ERROR)

    if not verbose:
        level = getattr(logging, experiment_config.logging.level.upper(), logging.INFO)
        setup_logging(level, log_file, experiment_config.logging.format)

    runner = ExperimentRunner(experiment_config, output_dir=out, threads=threads)
    try:
        with Progress(
            SpinnerColumn(),
            TextColumn("[progress.description]{task.description}"),
            console=console,
            transient=True,
        ) as progress:
            task = progress.add_task(f"Running {command}...", total=None)
            result = action(runner)
            progress.update(task, completed=True)
    except PartialRunError as e:
        for path in e.result.files:
            console.print(f"[yellow]Partial results written: {path}[/yellow]")
        _fail(runner.output_dir, e.cause, verbose)
    except ConfigurationError as e:
        console.print(f"[red]Error: {escape(str(e))}[/red]")
        sys.exit(EXIT_CONFIG_ERROR)
    except CogJamError as e:
        _fail(runner.output_dir, e, verbose)

    _display_result(result)


def _fail(output_dir: Path, error: Exception, verbose: bool) -> None:
    """Write the solver traceback next to the results and exit with the solver code."""
    trace_path = output_dir / SOLVER_ERROR_FILE
    try:
        output_dir.mkdir(parents=True, exist_ok=True)
        trace_path.write_text(
            "".join(traceback.format_exception(type(error), error, error.__traceback__)),
            encoding="utf-8",
        )
        console.print(f"[red]Error: {escape(str(error))}[/red] (trace written to {trace_path})")
    except OSError:
        console.print(f"[red]Error: {escape(str(error))}[/red]")
    if verbose:
        console.print_exception()
    sys.exit(EXIT_SOLVER_ERROR)


def _display_result(result: RunResult) -> None:
    """Display the run summary in the console."""
    table = Table(title=f"{result.command} summary")
    table.add_column("Metric", style="cyan")
    table.add_column("Value", justify="right")

    for report in result.reports:
        table.add_row(
            f"Q={report.budget:g} {report.label}",
            f"non-outage {report.non_outage_prob:.4f}, relative rate {report.relative_rate:.4f}",
        )
    for key, value in result.summary.items():
        table.add_row(key, value)
    table.add_row("Warnings", str(len(result.warnings)))
    console.print(table)

    for message in result.warnings:
        console.print(f"[yellow]Warning: {escape(message)}[/yellow]")
    for path in result.files:
        console.print(f"[green]Report generated: {path}[/green]")


if __name__ == "__main__":
    main()
