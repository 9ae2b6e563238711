"""Tests for the command-line interface."""

import pytest
import yaml
from click.testing import CliRunner

from cogjam import __version__
from cogjam.cli import EXIT_CONFIG_ERROR, EXIT_SOLVER_ERROR, SOLVER_ERROR_FILE, main
from cogjam.experiments import ExperimentRunner
from cogjam.utils.exceptions import SolverError


@pytest.fixture
def cli() -> CliRunner:
    return CliRunner()


def test_version(cli):
    result = cli.invoke(main, ["--version"])

    assert result.exit_code == 0
    assert __version__ in result.output


def test_init_config(cli, tmp_path):
    output = tmp_path / "generated.yaml"

    result = cli.invoke(main, ["init-config", "-o", str(output)])

    assert result.exit_code == 0
    assert "Configuration file generated" in result.output
    assert yaml.safe_load(output.read_text(encoding="utf-8"))["experiment"]["seed"] == 2016


def test_list_presets(cli):
    result = cli.invoke(main, ["list-presets"])

    assert result.exit_code == 0
    assert "fig2" in result.output
    assert "fig11" in result.output


def test_sweep_q(cli, small_config_file, tmp_path):
    out = tmp_path / "cli-out"

    result = cli.invoke(main, ["sweep-q", "-c", str(small_config_file), "--out", str(out)])

    assert result.exit_code == 0, result.output
    assert (out / "small_sweep_q.csv").exists()
    assert "Report generated" in result.output


def test_unknown_preset(cli, tmp_path):
    result = cli.invoke(main, ["sweep-q", "-p", "fig99", "--out", str(tmp_path)])

    assert result.exit_code == EXIT_CONFIG_ERROR
    assert "Unknown preset" in result.output


def test_invalid_config(cli, tmp_path):
    path = tmp_path / "bad.yaml"
    path.write_text("power:\n  q_sweep: []\n", encoding="utf-8")

    result = cli.invoke(main, ["sweep-q", "-c", str(path), "--out", str(tmp_path)])

    assert result.exit_code == EXIT_CONFIG_ERROR
    assert "Invalid configuration" in result.output


def test_solver_failure_writes_trace(cli, small_config_file, tmp_path, mocker):
    mocker.patch.object(ExperimentRunner, "sweep_q", side_effect=SolverError("bad bracket"))
    out = tmp_path / "failed"

    result = cli.invoke(main, ["sweep-q", "-c", str(small_config_file), "--out", str(out)])

    assert result.exit_code == EXIT_SOLVER_ERROR
    assert "bad bracket" in result.output
    assert "bad bracket" in (out / SOLVER_ERROR_FILE).read_text(encoding="utf-8")


def test_gen_ensemble_is_seeded(cli, small_config_file, tmp_path):
    def generate(seed: int, name: str) -> bytes:
        out = tmp_path / name
        args = ["gen-ensemble", "-c", str(small_config_file), "--seed", str(seed), "-o", str(out)]
        result = cli.invoke(main, args)
        assert result.exit_code == 0, result.output
        return (out / "small_ensemble.csv").read_bytes()

    assert generate(7, "a") == generate(7, "b")
    assert generate(7, "a") != generate(8, "c")
