"""Load run definitions from TOML files."""

from __future__ import annotations

import os
try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Any, Final

from domain.common import DEFAULT_TOL, EllipticModulus, parse_complex
from domain.protocol import OutputFormat

THREADS_ENV_VAR: Final[str] = "THETA_FORGE_THREADS"
SUBCOMMANDS: Final[tuple[str, ...]] = ("verlinde", "gram", "eval", "checks", "periods")


@dataclass(frozen=True)
class RunConfig:
    """One run of a subcommand with its theory and numerics parameters."""

    name: str
    description: str | None
    file_path: Path | None
    subcommand: str = "checks"
    n: int = 3
    k: int = 1
    tau: complex = 1j
    t: float | None = None
    t_detune: float = 0.0
    tolerance: float = 1e-6
    quadrature_points: int | None = None
    radius_cap: int = 64
    seed: int = 0
    threads: int = 1
    output_format: OutputFormat = OutputFormat.JSON
    output_path: Path | None = None

    @property
    def modulus(self) -> EllipticModulus:
        return EllipticModulus(self.tau)

    @property
    def level_shifted(self) -> int:
        return self.k + self.n

    def with_overrides(self, **overrides: Any) -> RunConfig:
        """Copy with every non-None override applied and revalidated."""
        updated = replace(self, **{key: value for key, value in overrides.items() if value is not None})
        validate_run_config(updated)
        return updated

    def as_config_json(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "subcommand": self.subcommand,
            "n": self.n,
            "k": self.k,
            "tau": [self.tau.real, self.tau.imag],
            "t": self.t,
            "t_detune": self.t_detune,
            "tolerance": self.tolerance,
            "quadrature_points": self.quadrature_points,
            "radius_cap": self.radius_cap,
            "seed": self.seed,
            "threads": self.threads,
            "output_format": self.output_format.value,
            "output_path": None if self.output_path is None else str(self.output_path),
        }


def default_run_config() -> RunConfig:
    config = RunConfig(name="default", description=None, file_path=None, threads=threads_from_env(1))
    validate_run_config(config)
    return config


def threads_from_env(default: int = 1) -> int:
    raw = os.environ.get(THREADS_ENV_VAR)
    if raw is None or not raw.strip():
        return default
    try:
        value = int(raw)
    except ValueError as exc:
        raise ValueError(f"{THREADS_ENV_VAR} must be an integer, got {raw!r}") from exc
    if value < 1:
        raise ValueError(f"{THREADS_ENV_VAR} must be >= 1, got {value}")
    return value


def load_run_config(file_path: Path) -> RunConfig:
    if not file_path.exists():
        raise FileNotFoundError(f"Config file not found: {file_path}")
    with file_path.open("rb") as file:
        raw = tomllib.load(file)
    return _parse_run_config(raw, file_path)


def load_run_configs(config_dir: Path) -> list[RunConfig]:
    """Load all TOML files in a directory with duplicate-name validation."""
    if not config_dir.exists():
        raise FileNotFoundError(f"Config directory not found: {config_dir}")
    if not config_dir.is_dir():
        raise NotADirectoryError(f"Config path is not a directory: {config_dir}")

    config_files = sorted(config_dir.glob("*.toml"))
    if not config_files:
        raise ValueError(f"No .toml config files found in: {config_dir}")

    configs = [load_run_config(file_path) for file_path in config_files]
    names = [config.name for config in configs]
    if len(names) != len(set(names)):
        raise ValueError(f"Duplicate run names found in {config_dir}: {names}")
    return configs


def _parse_run_config(raw: dict[str, Any], file_path: Path) -> RunConfig:
    run_raw = raw.get("run", {})
    theory_raw = raw.get("theory", {})
    numerics_raw = raw.get("numerics", {})
    output_raw = raw.get("output", {})

    name = str(run_raw.get("name", "")).strip()
    if not name:
        raise ValueError(f"{file_path}: [run].name is required")

    description_value = run_raw.get("description")
    description = None if description_value is None else str(description_value)

    try:
        tau = parse_complex(str(theory_raw.get("tau", "0+1i")))
    except ValueError as exc:
        raise ValueError(f"{file_path}: [theory].tau is not a complex number: {exc}") from exc

    t_value = theory_raw.get("t")
    points_value = numerics_raw.get("quadrature_points")
    path_value = output_raw.get("path")
    format_value = str(output_raw.get("format", OutputFormat.JSON.value))
    try:
        output_format = OutputFormat(format_value)
    except ValueError as exc:
        raise ValueError(f"{file_path}: [output].format must be one of json, csv") from exc

    config = RunConfig(
        name=name,
        description=description,
        file_path=file_path,
        subcommand=str(run_raw.get("subcommand", "checks")),
        n=int(theory_raw.get("n", 3)),
        k=int(theory_raw.get("k", 1)),
        tau=tau,
        t=None if t_value is None else float(t_value),
        t_detune=float(theory_raw.get("t_detune", 0.0)),
        tolerance=float(numerics_raw.get("tolerance", 1e-6)),
        quadrature_points=None if points_value is None else int(points_value),
        radius_cap=int(numerics_raw.get("radius_cap", 64)),
        seed=int(numerics_raw.get("seed", 0)),
        threads=int(numerics_raw.get("threads", threads_from_env(1))),
        output_format=output_format,
        output_path=None if path_value is None else Path(str(path_value)),
    )
    validate_run_config(config)
    return config


def validate_run_config(config: RunConfig) -> None:
    where = config.file_path if config.file_path is not None else config.name
    if config.subcommand not in SUBCOMMANDS:
        raise ValueError(f"{where}: [run].subcommand must be one of {', '.join(SUBCOMMANDS)}")
    if config.n < 2:
        raise ValueError(f"{where}: [theory].n must be >= 2")
    if config.k < 0:
        raise ValueError(f"{where}: [theory].k must be >= 0")
    if not complex(config.tau).imag > 0.0:
        raise ValueError(f"{where}: [theory].tau must have Im(tau) > 0")
    if config.t is not None and not config.t > 0.0:
        raise ValueError(f"{where}: [theory].t must be > 0")
    if not config.tolerance > 0.0:
        raise ValueError(f"{where}: [numerics].tolerance must be > 0")
    if config.tolerance < DEFAULT_TOL:
        raise ValueError(f"{where}: [numerics].tolerance must be >= {DEFAULT_TOL:g}")
    if config.quadrature_points is not None and config.quadrature_points < 4:
        raise ValueError(f"{where}: [numerics].quadrature_points must be >= 4")
    if config.radius_cap < 1:
        raise ValueError(f"{where}: [numerics].radius_cap must be >= 1")
    if config.threads < 1:
        raise ValueError(f"{where}: [numerics].threads must be >= 1")


__all__ = [
    "RunConfig",
    "SUBCOMMANDS",
    "THREADS_ENV_VAR",
    "default_run_config",
    "load_run_config",
    "load_run_configs",
    "threads_from_env",
    "validate_run_config",
]
