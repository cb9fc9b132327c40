"""Tests for SU(2) theta functions in the half-normalized polarization."""

from __future__ import annotations

import numpy as np
import pytest

from domain.common import EllipticModulus
from domain.errors import ResourceLimitError
from domain.protocol import ThetaFamily
from domain.su2 import (
    SU2Theta,
    su2_automorphy_factor,
    su2_half_shift_residual,
    su2_heat_residual,
    su2_quasi_periodicity_residual,
    su2_reflection_residual,
    su2_theta_eval,
)

TAU = EllipticModulus(0.3 + 0.8j)
POINTS = (0.0, 0.17 + 0.05j, -0.41 + 0.12j, 0.73 - 0.2j)


def _direct(k_prime: int, m: int, z: complex, half: bool = False) -> complex:
    total = 0.0 + 0.0j
    for p in range(-20, 21):
        u = m + k_prime * p
        sign = (-1) ** p if half else 1
        total += sign * np.exp(1j * np.pi * TAU.tau * u * u / k_prime + 2j * np.pi * u * z)
    return total


@pytest.mark.parametrize("family", list(ThetaFamily))
def test_series_matches_direct_sum(family: ThetaFamily) -> None:
    half = family is ThetaFamily.HALF
    for m in range(4):
        theta = SU2Theta(4, m, TAU, family)
        for z in POINTS:
            assert su2_theta_eval(theta, z) == pytest.approx(_direct(4, m, z, half), abs=1e-11)


@pytest.mark.parametrize("k_prime", [3, 4, 6])
def test_quasi_periodicity_both_families(k_prime: int) -> None:
    for family in ThetaFamily:
        for m in range(k_prime):
            theta = SU2Theta(k_prime, m, TAU, family)
            for z in POINTS:
                assert su2_quasi_periodicity_residual(theta, z) < 1e-9


def test_integral_family_is_periodic_and_reflects() -> None:
    for m in range(5):
        theta = SU2Theta(5, m, TAU)
        for z in POINTS:
            assert theta(z + 1.0) == pytest.approx(theta(z), abs=1e-11)
            assert su2_reflection_residual(theta, z) < 1e-10
            assert su2_half_shift_residual(theta, z) < 1e-10


def test_reflection_is_refused_for_the_half_family() -> None:
    with pytest.raises(ValueError, match="integral family"):
        su2_reflection_residual(SU2Theta(4, 1, TAU, ThetaFamily.HALF), 0.1)


def test_heat_equation() -> None:
    for family in ThetaFamily:
        theta = SU2Theta(6, 2, TAU, family)
        for z in POINTS[1:]:
            assert su2_heat_residual(theta, z) < 1e-5


def test_automorphy_factor_at_origin() -> None:
    expected = np.exp(-1j * np.pi * 4 * TAU.tau)
    assert su2_automorphy_factor(4, TAU, 0.0) == pytest.approx(expected)


def test_with_label_wraps_modulo_level() -> None:
    theta = SU2Theta(4, 1, TAU)
    assert theta.with_label(7).m == 3
    assert theta.with_tau(1j).tau.tau == 1j


def test_validation() -> None:
    with pytest.raises(ValueError, match="k'=0"):
        SU2Theta(0, 0, TAU)
    with pytest.raises(ValueError, match="outside 0..3"):
        SU2Theta(4, 4, TAU)
    with pytest.raises(ValueError, match="tol must be > 0"):
        SU2Theta(4, 1, TAU, tol=0.0)


def test_radius_cap_is_carried_and_enforced() -> None:
    theta = SU2Theta(6, 1, EllipticModulus(0.02j), radius_cap=1)
    with pytest.raises(ResourceLimitError, match="needs radius > 1"):
        su2_theta_eval(theta, 0.1)
    assert theta.with_tau(1j).radius_cap == 1
    assert theta.with_label(7).radius_cap == 1
    assert su2_half_shift_residual(SU2Theta(6, 1, TAU, radius_cap=8), 0.17 + 0.05j) < 1e-10
    with pytest.raises(ValueError, match="radius_cap must be >= 1"):
        SU2Theta(6, 1, TAU, radius_cap=0)
