"""JSON and CSV serialization of reports, and the points-file format read by `eval`.

Complex numbers are written as [re, im] pairs in JSON and as separate re/im columns in CSV.
"""

from __future__ import annotations

import csv
import json
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Final

import numpy as np

from domain.common import parse_complex

SCHEMA_VERSION: Final[int] = 1
GOLDEN_TOL: Final[float] = 1e-9
EVAL_COLUMNS: Final[tuple[str, ...]] = ("index", "point", "re", "im", "tail", "status")


def complex_pair(value: complex) -> list[float]:
    value = complex(value)
    return [float(value.real), float(value.imag)]


def _format_point(point: np.ndarray) -> str:
    return " ".join(f"{complex(c).real:.17g}{complex(c).imag:+.17g}i" for c in point)


def write_json(payload: dict[str, Any], path: Path | None) -> str:
    """Serialize with the schema version first; write to path when given and return the text."""
    text = json.dumps({"schema": SCHEMA_VERSION, **payload}, indent=2, sort_keys=False)
    if path is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text + "\n", encoding="utf-8")
    return text


def write_matrix_csv(matrix: np.ndarray, labels: Sequence[str], path: Path) -> None:
    """One row per entry: row label, column label, re, im."""
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="", encoding="utf-8") as file:
        writer = csv.writer(file)
        writer.writerow(["row", "col", "re", "im"])
        for i, row_label in enumerate(labels):
            for j, col_label in enumerate(labels):
                value = complex(matrix[i, j])
                writer.writerow([row_label, col_label, repr(value.real), repr(value.imag)])


def parse_points_file(path: Path, rank: int) -> list[np.ndarray]:
    """One point per line as whitespace- or comma-separated "a+bi" coordinates; '#' starts a comment."""
    if not path.exists():
        raise FileNotFoundError(f"Points file not found: {path}")
    points: list[np.ndarray] = []
    for line_number, line in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        content = line.split("#", 1)[0].replace(",", " ").strip()
        if not content:
            continue
        tokens = content.split()
        if len(tokens) != rank:
            raise ValueError(f"{path}:{line_number}: expected {rank} coordinates, got {len(tokens)}")
        try:
            points.append(np.array([parse_complex(token) for token in tokens], dtype=np.complex128))
        except ValueError as exc:
            raise ValueError(f"{path}:{line_number}: {exc}") from exc
    if not points:
        raise ValueError(f"{path}: no points found")
    return points


@dataclass(frozen=True)
class EvalRow:
    index: int
    point: np.ndarray
    value: complex | None
    tail: float
    status: str = "ok"

    def as_csv_row(self) -> list[str]:
        if self.value is None:
            return [str(self.index), _format_point(self.point), "", "", "", self.status]
        return [
            str(self.index),
            _format_point(self.point),
            repr(float(self.value.real)),
            repr(float(self.value.imag)),
            repr(float(self.tail)),
            self.status,
        ]

    def as_json_dict(self) -> dict[str, Any]:
        return {
            "index": self.index,
            "point": [complex_pair(c) for c in self.point],
            "value": None if self.value is None else complex_pair(self.value),
            "tail": self.tail,
            "status": self.status,
        }


def write_eval_csv(rows: Iterable[EvalRow], path: Path) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="", encoding="utf-8") as file:
        writer = csv.writer(file)
        writer.writerow(EVAL_COLUMNS)
        for row in rows:
            writer.writerow(row.as_csv_row())


def read_eval_csv(path: Path) -> dict[int, complex | None]:
    """index -> value from an eval CSV; flagged rows map to None."""
    if not path.exists():
        raise FileNotFoundError(f"Golden file not found: {path}")
    values: dict[int, complex | None] = {}
    with path.open(newline="", encoding="utf-8") as file:
        reader = csv.DictReader(file)
        missing = set(EVAL_COLUMNS) - set(reader.fieldnames or ())
        if missing:
            raise ValueError(f"{path}: missing columns {sorted(missing)}")
        for line_number, record in enumerate(reader, start=2):
            try:
                index = int(record["index"])
                if record["status"] != "ok":
                    values[index] = None
                else:
                    values[index] = complex(float(record["re"]), float(record["im"]))
            except ValueError as exc:
                raise ValueError(f"{path}:{line_number}: {exc}") from exc
    return values


def compare_golden(rows: Sequence[EvalRow], golden: dict[int, complex | None], tol: float = GOLDEN_TOL) -> list[str]:
    """Human-readable mismatches between fresh rows and a golden file; empty when they agree."""
    mismatches: list[str] = []
    for row in rows:
        if row.index not in golden:
            mismatches.append(f"index={row.index} missing from golden file")
            continue
        expected = golden[row.index]
        if expected is None or row.value is None:
            if (expected is None) != (row.value is None):
                mismatches.append(f"index={row.index} status differs from golden file")
            continue
        scale = max(1.0, abs(expected))
        if abs(row.value - expected) > tol * scale:
            mismatches.append(
                f"index={row.index} value={row.value} golden={expected} diff={abs(row.value - expected):.3g}"
            )
    return mismatches


__all__ = [
    "EVAL_COLUMNS",
    "EvalRow",
    "GOLDEN_TOL",
    "SCHEMA_VERSION",
    "compare_golden",
    "complex_pair",
    "parse_points_file",
    "read_eval_csv",
    "write_eval_csv",
    "write_json",
    "write_matrix_csv",
]
