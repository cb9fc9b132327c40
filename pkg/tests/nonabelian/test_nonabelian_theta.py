"""Tests for SU(n) theta series, their Weyl symmetries and the hat frame."""

from __future__ import annotations

import numpy as np
import pytest

from domain.common import EllipticModulus, random_points
from domain.errors import ResourceLimitError, SingularLocusError
from domain.nonabelian import (
    NATheta,
    hat_frame_eval,
    minus_series,
    na_automorphy_factor,
    na_heat_residual,
    natheta_eval,
    natheta_eval_certified,
    plain_series,
    quasi_periodicity_residual,
    sigma_eval,
    weyl_symmetry_residual,
)
from domain.protocol import Symmetry
from domain.rootsys import RootSystem, Weight, weyl_group

TAU = EllipticModulus(0.2 + 0.9j)


def _points(rank: int, count: int = 6, seed: int = 1) -> list[np.ndarray]:
    return random_points(np.random.default_rng(seed), count=count, rank=rank, tau=TAU.tau, imag_scale=0.25)


def _direct_plain(rs: RootSystem, gamma: tuple[int, ...], level: int, z: np.ndarray, reach: int = 6) -> complex:
    total = 0.0 + 0.0j
    for p in np.array(np.meshgrid(*([range(-reach, reach + 1)] * rs.l), indexing="ij")).reshape(rs.l, -1).T:
        u = np.asarray(gamma, dtype=float) + level * (rs.cartan @ p)
        total += np.exp(1j * np.pi * TAU.tau * (u @ rs.cartan_inv_float @ u) / level + 2j * np.pi * (u @ z))
    return total


def test_plain_series_matches_direct_lattice_sum() -> None:
    rs = RootSystem(3)
    theta = NATheta(rs, Weight((1, 0)), 2, TAU)
    for z in _points(rs.l, count=3):
        assert natheta_eval(theta, z) == pytest.approx(_direct_plain(rs, (1, 0), 2, z), abs=1e-10)


def test_minus_series_vanishes_for_singular_labels() -> None:
    rs = RootSystem(3)
    theta = NATheta(rs, Weight((0, 1)), 3, TAU, Symmetry.MINUS)
    assert theta.is_zero
    for z in _points(rs.l, count=3):
        assert natheta_eval(theta, z) == 0.0


def test_minus_series_of_rho_is_odd() -> None:
    rs = RootSystem(3)
    theta = NATheta(rs, rs.rho, 3, TAU, Symmetry.MINUS)
    for z in _points(rs.l):
        value = natheta_eval(theta, z)
        assert abs(natheta_eval(theta, -z) + value) < 1e-10 * max(1.0, abs(value))


@pytest.mark.parametrize("symmetry", [Symmetry.PLAIN, Symmetry.MINUS])
def test_quasi_periodicity(symmetry: Symmetry) -> None:
    rs = RootSystem(3)
    gamma = Weight((2, 1)) if symmetry is Symmetry.MINUS else Weight((1, 0))
    theta = NATheta(rs, gamma, 4, TAU, symmetry)
    for z in _points(rs.l):
        for q in ([1, 0], [0, 1], [1, -1]):
            assert quasi_periodicity_residual(theta, z, q) < 1e-9
            assert quasi_periodicity_residual(theta, z, q, imaginary=False) < 1e-9


def test_automorphy_factor_at_zero_shift() -> None:
    assert na_automorphy_factor(RootSystem(3), 4, TAU, [0, 0], np.array([0.3, 0.1j])) == pytest.approx(1.0)


def test_weyl_symmetries() -> None:
    rs = RootSystem(3)
    minus = NATheta(rs, Weight((2, 1)), 4, TAU, Symmetry.MINUS)
    plus = NATheta(rs, Weight((1, 0)), 3, TAU, Symmetry.PLUS)
    for z in _points(rs.l, count=3):
        for w in weyl_group(rs):
            assert weyl_symmetry_residual(minus, z, w) < 1e-9
            assert weyl_symmetry_residual(plus, z, w) < 1e-9
    with pytest.raises(ValueError, match="no Weyl symmetry"):
        weyl_symmetry_residual(NATheta(rs, Weight((1, 0)), 3, TAU), _points(rs.l)[0], weyl_group(rs)[1])


def test_plus_series_is_the_weyl_sum_of_plain_series() -> None:
    rs = RootSystem(3)
    gamma = Weight((1, 0))
    plus = NATheta(rs, gamma, 3, TAU, Symmetry.PLUS)
    z = _points(rs.l, count=1)[0]
    expected = sum(plain_series(rs, w.act(gamma), 3, TAU)(z) for w in weyl_group(rs))
    assert natheta_eval(plus, z) == pytest.approx(expected, abs=1e-10)


def test_heat_equation() -> None:
    rs = RootSystem(3)
    for theta in (NATheta(rs, Weight((1, 0)), 2, TAU), NATheta(rs, Weight((2, 1)), 4, TAU, Symmetry.MINUS)):
        for z in _points(rs.l, count=3):
            assert na_heat_residual(theta, z) < 1e-5


def test_certified_evaluation_reports_tail() -> None:
    theta = NATheta(RootSystem(4), Weight((1, 0, 0)), 2, TAU)
    value, tail, radius = natheta_eval_certified(theta, np.zeros(3))
    assert tail <= 1e-12
    assert radius >= 0
    assert value == pytest.approx(natheta_eval(theta, np.zeros(3)))
    with pytest.raises(ValueError, match="3 coordinates"):
        natheta_eval_certified(theta, np.zeros(2))


def test_sigma_examples() -> None:
    rs2 = RootSystem(2)
    assert sigma_eval(rs2, 0.0) == pytest.approx(0.0)
    z = 0.17 + 0.05j
    assert sigma_eval(rs2, z) == pytest.approx(2j * np.sin(2 * np.pi * z))

    rs3 = RootSystem(3)
    assert abs(sigma_eval(rs3, np.zeros(2))) < 1e-12
    for v in _points(rs3.l, count=3):
        for w in weyl_group(rs3):
            assert abs(sigma_eval(rs3, w.act_on_point(v)) - w.sign * sigma_eval(rs3, v)) < 1e-12


def test_hat_frame() -> None:
    rs = RootSystem(3)
    for z in _points(rs.l, count=3):
        assert hat_frame_eval(rs, Weight((0, 0)), 0, TAU, z) == pytest.approx(1.0)

    gamma = Weight((1, 0))
    for z in _points(rs.l, count=3):
        value = hat_frame_eval(rs, gamma, 1, TAU, z)
        denominator = minus_series(rs, rs.rho, 3, TAU)(z)
        numerator = minus_series(rs, gamma + rs.rho, 4, TAU)(z)
        assert abs(value * denominator - numerator) < 1e-10 * max(1.0, abs(numerator))
        for w in weyl_group(rs):
            moved = hat_frame_eval(rs, gamma, 1, TAU, w.act_on_point(z))
            assert abs(moved - value) < 1e-9 * max(1.0, abs(value))


def test_hat_frame_rejects_zero_of_denominator() -> None:
    rs = RootSystem(3)
    with pytest.raises(SingularLocusError, match="vanishes"):
        hat_frame_eval(rs, Weight((1, 0)), 1, TAU, np.zeros(2))
    with pytest.raises(ValueError, match="not in D_1"):
        hat_frame_eval(rs, Weight((2, 0)), 1, TAU, np.zeros(2))


def test_natheta_validation() -> None:
    rs = RootSystem(3)
    with pytest.raises(ValueError, match="2 labels"):
        NATheta(rs, Weight((1,)), 2, TAU)
    with pytest.raises(ValueError, match="level must be >= 1"):
        NATheta(rs, Weight((0, 0)), 0, TAU)
    with pytest.raises(ValueError, match="not in D_1"):
        NATheta(rs, Weight((1, 1)), 1, TAU, Symmetry.HATPLUS)


def test_radius_cap_limits_truncation() -> None:
    rs = RootSystem(3)
    theta = NATheta(rs, Weight((1, 0)), 2, EllipticModulus(0.02j), radius_cap=1)
    with pytest.raises(ResourceLimitError, match="needs radius > 1"):
        natheta_eval(theta, np.array([0.1, 0.2]))
    assert theta.with_tau(1j).radius_cap == 1
    with pytest.raises(ValueError, match="radius_cap must be >= 1"):
        NATheta(rs, Weight((1, 0)), 2, TAU, radius_cap=0)
