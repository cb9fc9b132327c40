"""Tests for TOML-based run config loading."""

from __future__ import annotations

from pathlib import Path

import pytest

from domain.config import (
    THREADS_ENV_VAR,
    default_run_config,
    load_run_config,
    load_run_configs,
)
from domain.protocol import OutputFormat

CONFIG_DIR = Path(__file__).resolve().parents[2] / "configs" / "runs"


def _write(path: Path, body: str) -> Path:
    path.write_text(body.strip() + "\n")
    return path


def test_load_run_config_reads_every_table(tmp_path: Path) -> None:
    config_path = _write(
        tmp_path / "gram.toml",
        """
[run]
name = "su3_gram"
description = "A test run"
subcommand = "gram"

[theory]
n = 3
k = 2
tau = "0.25+1.5i"
t = 0.2

[numerics]
tolerance = 1e-8
quadrature_points = 16
radius_cap = 32
seed = 7
threads = 3

[output]
format = "csv"
path = "out/gram.csv"
""",
    )

    config = load_run_config(config_path)
    assert config.name == "su3_gram"
    assert config.description == "A test run"
    assert config.file_path == config_path
    assert config.subcommand == "gram"
    assert (config.n, config.k) == (3, 2)
    assert config.tau == pytest.approx(0.25 + 1.5j)
    assert config.t == pytest.approx(0.2)
    assert config.tolerance == pytest.approx(1e-8)
    assert config.quadrature_points == 16
    assert config.radius_cap == 32
    assert config.seed == 7
    assert config.threads == 3
    assert config.output_format is OutputFormat.CSV
    assert config.output_path == Path("out/gram.csv")
    assert config.level_shifted == 5
    assert config.modulus.tau == pytest.approx(0.25 + 1.5j)


def test_defaults_fill_missing_fields(tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.delenv(THREADS_ENV_VAR, raising=False)
    config = load_run_config(_write(tmp_path / "minimal.toml", '[run]\nname = "minimal"'))

    assert config.subcommand == "checks"
    assert (config.n, config.k, config.tau) == (3, 1, 1j)
    assert config.t is None
    assert config.quadrature_points is None
    assert config.threads == 1
    assert config.output_format is OutputFormat.JSON


@pytest.mark.parametrize(
    ("body", "message"),
    [
        ('[run]\ndescription = "x"', r"\[run\].name is required"),
        ('[run]\nname = "a"\nsubcommand = "plot"', r"\[run\].subcommand must be one of"),
        ('[run]\nname = "a"\n[theory]\nn = 1', r"\[theory\].n must be >= 2"),
        ('[run]\nname = "a"\n[theory]\nk = -1', r"\[theory\].k must be >= 0"),
        ('[run]\nname = "a"\n[theory]\ntau = "1-1i"', r"Im\(tau\) > 0"),
        ('[run]\nname = "a"\n[theory]\ntau = "abc"', r"\[theory\].tau is not a complex number"),
        ('[run]\nname = "a"\n[theory]\nt = 0.0', r"\[theory\].t must be > 0"),
        ('[run]\nname = "a"\n[numerics]\ntolerance = 1e-14', r"\[numerics\].tolerance must be >= 1e-12"),
        ('[run]\nname = "a"\n[numerics]\nquadrature_points = 2', r"\[numerics\].quadrature_points must be >= 4"),
        ('[run]\nname = "a"\n[numerics]\nthreads = 0', r"\[numerics\].threads must be >= 1"),
        ('[run]\nname = "a"\n[output]\nformat = "xml"', r"\[output\].format must be one of json, csv"),
    ],
)
def test_invalid_fields_name_the_file_and_field(tmp_path: Path, body: str, message: str) -> None:
    config_path = _write(tmp_path / "bad.toml", body)
    with pytest.raises(ValueError, match=message) as info:
        load_run_config(config_path)
    assert str(config_path) in str(info.value)


def test_missing_file_and_directory_errors(tmp_path: Path) -> None:
    with pytest.raises(FileNotFoundError, match="Config file not found"):
        load_run_config(tmp_path / "absent.toml")
    with pytest.raises(FileNotFoundError, match="Config directory not found"):
        load_run_configs(tmp_path / "absent")
    with pytest.raises(ValueError, match="No .toml config files"):
        load_run_configs(tmp_path)


def test_duplicate_names_raise_error(tmp_path: Path) -> None:
    _write(tmp_path / "a.toml", '[run]\nname = "dup"')
    _write(tmp_path / "b.toml", '[run]\nname = "dup"')
    with pytest.raises(ValueError, match="Duplicate run names"):
        load_run_configs(tmp_path)


def test_threads_env_var(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setenv(THREADS_ENV_VAR, "4")
    assert default_run_config().threads == 4

    monkeypatch.setenv(THREADS_ENV_VAR, "zero")
    with pytest.raises(ValueError, match="must be an integer"):
        default_run_config()

    monkeypatch.setenv(THREADS_ENV_VAR, "0")
    with pytest.raises(ValueError, match="must be >= 1"):
        default_run_config()


def test_with_overrides_revalidates(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.delenv(THREADS_ENV_VAR, raising=False)
    config = default_run_config()
    updated = config.with_overrides(n=4, k=None, tau=0.1 + 2j)

    assert (updated.n, updated.k) == (4, config.k)
    assert updated.as_config_json()["tau"] == [0.1, 2.0]
    with pytest.raises(ValueError, match=r"\[theory\].n must be >= 2"):
        config.with_overrides(n=1)


def test_shipped_run_configs_load() -> None:
    configs = {config.name: config for config in load_run_configs(CONFIG_DIR)}

    assert set(configs) == {"default", "detuned_descent", "su2_level1"}
    assert configs["detuned_descent"].t_detune == pytest.approx(0.01)
    assert configs["su2_level1"].n == 2
    assert configs["su2_level1"].quadrature_points == 64
