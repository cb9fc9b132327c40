"""Tests for the JSON/CSV writers and the points-file format."""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np
import pytest

from reports import (
    EvalRow,
    compare_golden,
    parse_points_file,
    read_eval_csv,
    write_eval_csv,
    write_json,
    write_matrix_csv,
)


def test_parse_points_file(tmp_path: Path) -> None:
    path = tmp_path / "points.txt"
    path.write_text("# header\n0.1+0.2i, -0.5i\n\n1 2+0i  # trailing comment\n")

    points = parse_points_file(path, 2)
    assert len(points) == 2
    np.testing.assert_allclose(points[0], [0.1 + 0.2j, -0.5j])
    np.testing.assert_allclose(points[1], [1.0, 2.0])


def test_parse_points_file_errors(tmp_path: Path) -> None:
    path = tmp_path / "points.txt"
    with pytest.raises(FileNotFoundError, match="Points file not found"):
        parse_points_file(path, 1)

    path.write_text("0.1 0.2\n")
    with pytest.raises(ValueError, match=r"points.txt:1: expected 1 coordinates, got 2"):
        parse_points_file(path, 1)

    path.write_text("0.1 zz\n")
    with pytest.raises(ValueError, match=r"points.txt:1: invalid complex literal"):
        parse_points_file(path, 2)

    path.write_text("# nothing\n")
    with pytest.raises(ValueError, match="no points found"):
        parse_points_file(path, 2)


def test_write_json_puts_schema_first(tmp_path: Path) -> None:
    path = tmp_path / "nested" / "out.json"
    text = write_json({"kind": "demo", "value": [1.0, 2.0]}, path)

    payload = json.loads(path.read_text())
    assert list(payload) == ["schema", "kind", "value"]
    assert json.loads(text) == payload


def test_eval_csv_and_golden_comparison(tmp_path: Path) -> None:
    rows = [
        EvalRow(index=0, point=np.array([0.1 + 0.0j]), value=1.5 - 0.25j, tail=1e-12),
        EvalRow(index=1, point=np.array([0.0 + 0.0j]), value=None, tail=0.0, status="singular"),
    ]
    path = tmp_path / "golden.csv"
    write_eval_csv(rows, path)

    golden = read_eval_csv(path)
    assert golden == {0: 1.5 - 0.25j, 1: None}
    assert compare_golden(rows, golden) == []

    drifted = [EvalRow(index=0, point=rows[0].point, value=1.5 - 0.24j, tail=0.0), rows[1]]
    mismatches = compare_golden(drifted, golden)
    assert len(mismatches) == 1
    assert mismatches[0].startswith("index=0 value=")

    flipped = [rows[0], EvalRow(index=1, point=rows[1].point, value=0.0j, tail=0.0)]
    assert compare_golden(flipped, golden) == ["index=1 status differs from golden file"]
    assert compare_golden([EvalRow(index=5, point=rows[0].point, value=0j, tail=0.0)], golden) == [
        "index=5 missing from golden file"
    ]


def test_read_eval_csv_requires_columns(tmp_path: Path) -> None:
    path = tmp_path / "bad.csv"
    path.write_text("index,re\n0,1.0\n")
    with pytest.raises(ValueError, match="missing columns"):
        read_eval_csv(path)


def test_write_matrix_csv(tmp_path: Path) -> None:
    path = tmp_path / "gram.csv"
    write_matrix_csv(np.array([[1.0, 0.5j], [-0.5j, 1.0]]), ("a", "b"), path)

    lines = path.read_text().splitlines()
    assert lines[0] == "row,col,re,im"
    assert len(lines) == 5
    assert lines[2] == "a,b,0.0,0.5"
