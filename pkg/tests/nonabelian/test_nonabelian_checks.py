"""Tests for the Looijenga dimension count, weight classes and the Weyl-invariant Picard group."""

from __future__ import annotations

from math import comb

import pytest

from domain.common import EllipticModulus
from domain.nonabelian import (
    looijenga_dim_check,
    picard_invariant_check,
    plus_frame_labels,
    weight_classes,
)
from domain.rootsys import RootSystem, level_k_weights


@pytest.mark.parametrize(("level", "expected"), [(2, (6, 0)), (3, (10, 1)), (4, (15, 3))])
def test_looijenga_dimensions_for_su3(level: int, expected: tuple[int, int]) -> None:
    report = looijenga_dim_check(RootSystem(3), level, tau=EllipticModulus(0.1 + 1.1j), seed=3)

    assert report.as_tuple() == expected
    assert report.matches
    assert report.expected_plus == comb(level + 2, 2)


@pytest.mark.parametrize(("level", "expected"), [(3, (20, 0)), (4, (35, 1))])
def test_looijenga_dimensions_for_su4(level: int, expected: tuple[int, int]) -> None:
    report = looijenga_dim_check(RootSystem(4), level, tau=EllipticModulus(0.3 + 0.8j), seed=1)

    assert report.as_tuple() == expected
    assert report.matches
    assert report.expected_plus == comb(level + 3, 3)


def test_looijenga_echo_reports_attempts() -> None:
    lines: list[str] = []
    looijenga_dim_check(RootSystem(3), 3, echo=lines.append)

    assert len(lines) >= 2
    assert all(line.startswith("looijenga n=3 level=3") for line in lines)


def test_looijenga_rejects_su2() -> None:
    with pytest.raises(ValueError, match="n >= 3"):
        looijenga_dim_check(RootSystem(2), 2)


def test_weight_classes_count() -> None:
    rs = RootSystem(3)
    for level in (1, 2, 3):
        assert len(weight_classes(rs, level)) == rs.n * level**rs.l
    with pytest.raises(ValueError, match="level must be >= 1"):
        weight_classes(rs, 0)


def test_plus_frame_labels_are_the_level_weights() -> None:
    for n, level in ((3, 1), (3, 3), (4, 2)):
        rs = RootSystem(n)
        assert plus_frame_labels(rs, level) == level_k_weights(rs, level)


def test_picard_invariant_order() -> None:
    su2 = picard_invariant_check(RootSystem(2))
    assert su2.factors == (2,)
    assert su2.order == 4
    assert not su2.is_trivial

    for n in (3, 4, 5):
        report = picard_invariant_check(RootSystem(n))
        assert report.order == 1
        assert report.is_trivial
