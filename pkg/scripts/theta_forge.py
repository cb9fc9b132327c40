#!/usr/bin/env python3
"""Command-line driver for theta evaluations, Gram checks and the property suite."""

from __future__ import annotations

import sys
from math import comb
from pathlib import Path
from typing import Annotated, Any

import typer
from rich.console import Console
from rich.table import Table

ROOT_DIR = Path(__file__).resolve().parents[1]
SRC_DIR = ROOT_DIR / "src"
if str(SRC_DIR) not in sys.path:
    sys.path.insert(0, str(SRC_DIR))

import numpy as np

from domain.abelian import PolarizedTorus
from domain.common import DEFAULT_TOL, parse_complex
from domain.config import THREADS_ENV_VAR, RunConfig, default_run_config, load_run_config
from domain.cst import CSTImage, PsiDistribution, character_eval, cst_psi_closed_form
from domain.errors import ConvergenceError, ResourceLimitError, SingularLocusError, SingularWeightError
from domain.gram import GramReport, abelian_gram, hall_gram, nonabelian_gram
from domain.nonabelian import NATheta, natheta_eval_certified, sigma_eval
from domain.periods import canonical_basis, period_equivalence
from domain.pipeline import run_checks
from domain.protocol import EvalKind, OutputFormat, Symmetry, ThetaFamily
from domain.rootsys import RootSystem, Weight, level_k_weights
from domain.su2 import su2_gram
from reports import (
    EvalRow,
    GOLDEN_TOL,
    compare_golden,
    parse_points_file,
    read_eval_csv,
    write_eval_csv,
    write_json,
    write_matrix_csv,
)

MAX_VERLINDE_N = 8
MAX_VERLINDE_K = 12
EXIT_TOLERANCE = 2
EXIT_CONVERGENCE = 3
EXIT_CHECKS_FAILED = 1
LEVEL_RTOL = 1e-12

app = typer.Typer(
    add_completion=False,
    no_args_is_help=True,
    help="Genus-one non-abelian theta functions for SU(n): evaluators and unitarity checks.",
)

ConfigOption = Annotated[Path | None, typer.Option("--config", help="TOML run config; flags override it.")]
NOption = Annotated[int | None, typer.Option("--n", help="SU(n) rank parameter.")]
KOption = Annotated[int | None, typer.Option("--k", help="Level k.")]
TauOption = Annotated[str | None, typer.Option("--tau", help='Modulus as "a+bi".')]
OutputOption = Annotated[Path | None, typer.Option("--output", help="Write the result here instead of stdout.")]
FormatOption = Annotated[OutputFormat | None, typer.Option("--format", help="json or csv.")]
ThreadsOption = Annotated[
    int | None,
    typer.Option("--threads", envvar=THREADS_ENV_VAR, help="Quadrature worker threads."),
]
SeedOption = Annotated[int | None, typer.Option("--seed", help="Seed for sampled points.")]


def _parse_tau(text: str | None) -> complex | None:
    if text is None:
        return None
    try:
        return parse_complex(text)
    except ValueError as exc:
        raise typer.BadParameter(str(exc), param_hint="--tau") from exc


def _parse_ints(text: str, param_hint: str) -> tuple[int, ...]:
    try:
        return tuple(int(token) for token in text.replace(",", " ").split())
    except ValueError as exc:
        raise typer.BadParameter(f"expected integers, got {text!r}", param_hint=param_hint) from exc


def _parse_matrix(text: str, param_hint: str) -> list[list[int]]:
    """Rows separated by ';', entries by ',' or spaces."""
    rows = [_parse_ints(row, param_hint) for row in text.split(";") if row.strip()]
    if not rows or any(len(row) != len(rows) for row in rows):
        raise typer.BadParameter(f"expected a square integer matrix, got {text!r}", param_hint=param_hint)
    return [list(row) for row in rows]


def _resolve_config(config_path: Path | None, subcommand: str, **overrides: Any) -> RunConfig:
    try:
        base = load_run_config(config_path) if config_path is not None else default_run_config()
        return base.with_overrides(subcommand=subcommand, **overrides)
    except (FileNotFoundError, ValueError) as exc:
        raise typer.BadParameter(str(exc)) from exc


def _emit_json(payload: dict[str, Any], path: Path | None) -> None:
    text = write_json(payload, path)
    if path is None:
        typer.echo(text)
    else:
        typer.echo(f"wrote path={path}")


@app.command("verlinde")
def verlinde(
    n_min: Annotated[int, typer.Option("--n-min")] = 2,
    n_max: Annotated[int, typer.Option("--n-max")] = 5,
    k_min: Annotated[int, typer.Option("--k-min")] = 0,
    k_max: Annotated[int, typer.Option("--k-max")] = 7,
    output: OutputOption = None,
) -> None:
    """Count D_k against binom(n+k-1, k)."""
    if not 2 <= n_min <= n_max <= MAX_VERLINDE_N:
        raise typer.BadParameter(f"need 2 <= n-min <= n-max <= {MAX_VERLINDE_N}", param_hint="--n-max")
    if not 0 <= k_min <= k_max <= MAX_VERLINDE_K:
        raise typer.BadParameter(f"need 0 <= k-min <= k-max <= {MAX_VERLINDE_K}", param_hint="--k-max")

    rows = []
    for n in range(n_min, n_max + 1):
        rs = RootSystem(n)
        for k in range(k_min, k_max + 1):
            count = len(level_k_weights(rs, k))
            expected = comb(n + k - 1, k)
            rows.append({"n": n, "k": k, "count": count, "verlinde": expected, "match": count == expected})

    if output is not None:
        _emit_json({"kind": "verlinde", "rows": rows}, output)
        return

    table = Table(title="Verlinde dimensions")
    for column in ("n", "k", "|D_k|", "binom(n+k-1,k)", "match"):
        table.add_column(column, justify="right")
    for row in rows:
        table.add_row(*(str(row[key]) for key in ("n", "k", "count", "verlinde", "match")))
    Console().print(table)


def _run_gram(
    config: RunConfig,
    *,
    abelian: bool,
    l: int,
    delta: tuple[int, ...] | None,
    family: ThetaFamily,
    refine: bool,
) -> GramReport:
    modulus = config.modulus
    common = {"N": config.quadrature_points, "threads": config.threads, "echo": typer.echo}
    if abelian:
        delta = (1,) * l if delta is None else delta
        torus = PolarizedTorus(l=l, omega=config.tau * np.eye(l), delta=delta, k=config.k)
        return abelian_gram(torus, t=config.t, refine=refine, **common)
    if config.n == 2:
        return su2_gram(config.k, modulus, family=family, t=config.t, refine=refine, **common)
    rs = RootSystem(config.n)
    if config.t is not None and abs(config.t * config.level_shifted - 1.0) > LEVEL_RTOL:
        return hall_gram(rs, config.k, modulus, t=config.t, refine=refine, **common)
    return nonabelian_gram(rs, config.k, modulus, refine=refine, **common)


@app.command("gram")
def gram(
    config_path: ConfigOption = None,
    n: NOption = None,
    k: KOption = None,
    tau: TauOption = None,
    points: Annotated[int | None, typer.Option("--N", help="Quadrature points per dimension.")] = None,
    t: Annotated[float | None, typer.Option("--t", help="Heat time; defaults to the descent time.")] = None,
    tolerance: Annotated[float | None, typer.Option("--tolerance")] = None,
    abelian: Annotated[bool, typer.Option("--abelian", help="Gram of the abelian Dirac frame.")] = False,
    l: Annotated[int, typer.Option("--l", help="Abelian rank.")] = 1,
    delta: Annotated[str | None, typer.Option("--delta", help='Abelian polarization type, e.g. "1,2".')] = None,
    family: Annotated[ThetaFamily, typer.Option("--family", help="SU(2) theta family.")] = ThetaFamily.INTEGRAL,
    refine: Annotated[bool, typer.Option("--refine", help="Recompute at 1.5N and compare.")] = False,
    output: OutputOption = None,
    output_format: FormatOption = None,
    threads: ThreadsOption = None,
) -> None:
    """Quadrature Gram matrix of a frame; exits 2 off tolerance, 3 when refinement does not settle."""
    config = _resolve_config(
        config_path,
        "gram",
        n=n,
        k=k,
        tau=_parse_tau(tau),
        quadrature_points=points,
        t=t,
        tolerance=tolerance,
        output_path=output,
        output_format=output_format,
        threads=threads,
    )
    parsed_delta = None if delta is None else _parse_ints(delta, "--delta")
    if abelian and parsed_delta is not None and len(parsed_delta) != l:
        raise typer.BadParameter(f"--delta needs {l} entries, got {delta!r}", param_hint="--delta")

    try:
        report = _run_gram(config, abelian=abelian, l=l, delta=parsed_delta, family=family, refine=refine)
    except ConvergenceError as exc:
        typer.echo(f"convergence_error={exc}", err=True)
        raise typer.Exit(code=EXIT_CONVERGENCE) from exc
    except ValueError as exc:
        raise typer.BadParameter(str(exc)) from exc

    if config.output_format is OutputFormat.CSV and config.output_path is not None:
        write_matrix_csv(report.matrix, report.labels, config.output_path)
        typer.echo(f"wrote path={config.output_path}")
    else:
        _emit_json({"kind": "gram", "config": config.as_config_json(), "report": report.as_json_dict()}, config.output_path)

    passed = report.is_identity(config.tolerance)
    typer.echo(
        f"gram kind={report.kind} dimension={report.dimension} "
        f"max_deviation={report.max_deviation:.3g} tolerance={config.tolerance:g} passed={passed}"
    )
    if not passed:
        raise typer.Exit(code=EXIT_TOLERANCE)


def _evaluate_point(
    kind: EvalKind,
    rs: RootSystem,
    weight: Weight,
    config: RunConfig,
    point: np.ndarray,
    *,
    symmetry: Symmetry,
    truncated: bool,
) -> tuple[complex, float]:
    """(value, certified tail) at one point."""
    if kind is EvalKind.SIGMA:
        return sigma_eval(rs, point), 0.0
    if kind is EvalKind.CHARACTER:
        return character_eval(rs, weight, point), 0.0
    if kind is EvalKind.THETA:
        theta = NATheta(rs, weight, config.k, config.modulus, symmetry, radius_cap=config.radius_cap)
        value, tail, _ = natheta_eval_certified(theta, point)
        return value, tail
    psi = PsiDistribution(rs, weight, config.k)
    if truncated:
        image = CSTImage(psi, config.modulus, 1.0 / config.level_shifted, tol=DEFAULT_TOL)
        return image(point), DEFAULT_TOL
    return cst_psi_closed_form(psi, config.modulus, point), 0.0


@app.command("eval")
def evaluate(
    kind: Annotated[EvalKind, typer.Argument(help="theta, character, cst-psi or sigma.")],
    points_file: Annotated[Path, typer.Option("--points", help="One point per line, coordinates as a+bi.")],
    config_path: ConfigOption = None,
    n: NOption = None,
    k: KOption = None,
    tau: TauOption = None,
    weight: Annotated[str | None, typer.Option("--weight", help='Dynkin labels, e.g. "1,0"; defaults to 0.')] = None,
    symmetry: Annotated[Symmetry, typer.Option("--symmetry", help="Theta symmetrization.")] = Symmetry.PLAIN,
    truncated: Annotated[bool, typer.Option("--truncated", help="cst-psi by the truncated series.")] = False,
    radius_cap: Annotated[int | None, typer.Option("--radius-cap", help="Largest theta truncation radius.")] = None,
    bless: Annotated[Path | None, typer.Option("--bless", help="Write the values as a golden CSV.")] = None,
    golden: Annotated[Path | None, typer.Option("--golden", help="Compare against a golden CSV.")] = None,
    output: OutputOption = None,
    output_format: FormatOption = None,
) -> None:
    """Evaluate one function on a list of points; singular points are flagged per row."""
    config = _resolve_config(
        config_path,
        "eval",
        n=n,
        k=k,
        tau=_parse_tau(tau),
        radius_cap=radius_cap,
        output_path=output,
        output_format=output_format,
    )
    rs = RootSystem(config.n)
    labels = (0,) * rs.l if weight is None else _parse_ints(weight, "--weight")
    if len(labels) != rs.l:
        raise typer.BadParameter(f"--weight needs {rs.l} labels, got {weight!r}", param_hint="--weight")
    try:
        points = parse_points_file(points_file, rs.l)
    except (FileNotFoundError, ValueError) as exc:
        raise typer.BadParameter(str(exc), param_hint="--points") from exc

    rows: list[EvalRow] = []
    for index, point in enumerate(points):
        try:
            value, tail = _evaluate_point(
                kind, rs, Weight(labels), config, point, symmetry=symmetry, truncated=truncated
            )
        except (SingularLocusError, SingularWeightError) as exc:
            typer.echo(f"eval index={index} status=singular detail={exc}", err=True)
            rows.append(EvalRow(index=index, point=point, value=None, tail=0.0, status="singular"))
            continue
        except ResourceLimitError as exc:
            typer.echo(f"eval index={index} status=resource_limit detail={exc}", err=True)
            rows.append(EvalRow(index=index, point=point, value=None, tail=0.0, status="resource_limit"))
            continue
        except ValueError as exc:
            raise typer.BadParameter(str(exc)) from exc
        rows.append(EvalRow(index=index, point=point, value=complex(value), tail=float(tail)))

    if bless is not None:
        write_eval_csv(rows, bless)
        typer.echo(f"blessed path={bless} rows={len(rows)}")

    if config.output_format is OutputFormat.CSV and config.output_path is not None:
        write_eval_csv(rows, config.output_path)
        typer.echo(f"wrote path={config.output_path}")
    elif bless is None or config.output_path is not None:
        payload = {
            "kind": kind.value,
            "config": config.as_config_json(),
            "weight": list(labels),
            "rows": [row.as_json_dict() for row in rows],
        }
        _emit_json(payload, config.output_path)

    if golden is not None:
        try:
            expected = read_eval_csv(golden)
        except (FileNotFoundError, ValueError) as exc:
            raise typer.BadParameter(str(exc), param_hint="--golden") from exc
        mismatches = compare_golden(rows, expected, GOLDEN_TOL)
        for mismatch in mismatches:
            typer.echo(f"golden_mismatch {mismatch}", err=True)
        typer.echo(f"golden path={golden} rows={len(rows)} mismatches={len(mismatches)}")
        if mismatches:
            raise typer.Exit(code=EXIT_TOLERANCE)


@app.command("checks")
def checks(
    config_path: ConfigOption = None,
    n: NOption = None,
    k: KOption = None,
    tau: TauOption = None,
    t_detune: Annotated[float | None, typer.Option("--t-detune", help="Offset added to the descent time.")] = None,
    only: Annotated[list[str] | None, typer.Option("--only", help="Run only the named checks.")] = None,
    seed: SeedOption = None,
    output: OutputOption = None,
) -> None:
    """Run the property suite; n = 2 selects the SU(2) checks. Exit 0 iff every check passes."""
    config = _resolve_config(
        config_path, "checks", n=n, k=k, tau=_parse_tau(tau), t_detune=t_detune, seed=seed, output_path=output
    )
    try:
        summary = run_checks(config, names=only or None, echo=typer.echo)
    except KeyError as exc:
        raise typer.BadParameter(str(exc), param_hint="--only") from exc
    if config.output_path is not None:
        _emit_json({"kind": "checks", **summary.as_json_dict()}, config.output_path)
    if not summary.passed:
        raise typer.Exit(code=EXIT_CHECKS_FAILED)


@app.command("periods")
def periods(
    n: Annotated[int, typer.Option("--n", help="SU(n) rank parameter.")] = 3,
    move: Annotated[str | None, typer.Option("--move", help='B in Gamma_n as rows, e.g. "1,3;0,1".')] = None,
    output: OutputOption = None,
) -> None:
    """Canonical basis, elementary divisors and period matrix of sl(n), optionally moved by B."""
    try:
        data = canonical_basis(n)
        payload: dict[str, Any] = {"kind": "periods", "basis": data.as_json_dict()}
        if move is not None:
            equivalence = period_equivalence(n, _parse_matrix(move, "--move"), base=data)
            payload["moved"] = {
                "B": [[int(entry) for entry in row] for row in equivalence.B.tolist()],
                "B_tilde": [[str(entry) for entry in row] for row in equivalence.B_tilde.tolist()],
                "basis": equivalence.second.as_json_dict(),
            }
    except ValueError as exc:
        raise typer.BadParameter(str(exc)) from exc
    _emit_json(payload, output)


if __name__ == "__main__":
    app()
