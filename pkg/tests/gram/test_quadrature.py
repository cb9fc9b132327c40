"""Tests for the shifted product grid and its FFT evaluation of trigonometric series."""

from __future__ import annotations

import numpy as np
import pytest

from domain.gram import GramReport, QuadratureGrid, default_points, generic_offset


def test_trig_values_match_direct_sum() -> None:
    rng = np.random.default_rng(5)
    grid = QuadratureGrid(2, 8, generic_offset(2, 8))
    frequencies = rng.integers(-20, 21, size=(15, 2))
    values = rng.normal(size=15) + 1j * rng.normal(size=15)
    expected = np.exp(2j * np.pi * grid.nodes @ frequencies.T) @ values
    assert np.allclose(grid.trig_values(frequencies, values), expected, atol=1e-12)


def test_trig_values_reject_fractional_frequencies() -> None:
    grid = QuadratureGrid(1, 8)
    with pytest.raises(ValueError, match="not integral"):
        grid.trig_values(np.array([[0.5]]), np.array([1.0]))


def test_grid_shape_and_weights() -> None:
    grid = QuadratureGrid(2, 6)
    assert grid.nodes.shape == (36, 2)
    assert grid.size == 6**4
    assert grid.weight == pytest.approx(6.0**-4)
    assert np.allclose(grid.nodes[0], [1 / 12, 1 / 12])


def test_grid_validation() -> None:
    with pytest.raises(ValueError, match="points_per_dim must be >= 4"):
        QuadratureGrid(1, 3)
    with pytest.raises(ValueError, match=r"\[0, 1/N\)"):
        QuadratureGrid(1, 8, np.array([0.2]))
    with pytest.raises(ValueError, match="length 2"):
        QuadratureGrid(2, 8, np.array([0.01]))


def test_generic_offset_is_inside_first_cell() -> None:
    for l in (1, 2, 3):
        for N in (4, 12, 64):
            offset = generic_offset(l, N)
            assert offset.shape == (l,)
            assert np.all(offset > 0.0)
            assert np.all(offset < 1.0 / N)
    assert default_points(1) == 64
    assert default_points(7) == 8


def test_gram_report_deviation_fields() -> None:
    matrix = np.array([[1.0, 1e-7j], [-1e-7j, 1.0 + 2e-7]])
    report = GramReport(kind="test", matrix=matrix, labels=("a", "b"), N_used=8, seconds=0.0, t=1.0, normalization=1.0)
    assert report.dimension == 2
    assert report.max_offdiag == pytest.approx(1e-7)
    assert report.max_diag_deviation == pytest.approx(2e-7)
    assert report.is_identity(1e-6)
    assert not report.is_identity(1e-8)
    payload = report.as_json_dict()
    assert payload["matrix"][0][1] == [0.0, pytest.approx(1e-7)]
    assert payload["labels"] == ["a", "b"]


def test_gram_report_rejects_label_mismatch() -> None:
    with pytest.raises(ValueError, match="labels"):
        GramReport(kind="test", matrix=np.eye(2), labels=("a",), N_used=8, seconds=0.0, t=1.0, normalization=1.0)
