"""Tests for the SU(2) symmetric spaces, psi families and their Gram matrices."""

from __future__ import annotations

import numpy as np
import pytest

from domain.common import EllipticModulus
from domain.errors import ConvergenceError
from domain.protocol import ThetaFamily
from domain.su2 import (
    SU2Psi,
    su2_automorphy_residual,
    su2_descent_residual,
    su2_dim_decomposition,
    su2_gram,
    su2_image_series,
    su2_numeric_rank,
    su2_orbifold_dimension_check,
    su2_product_isomorphism_check,
    su2_psi_basis,
)

TAU = EllipticModulus(0.3 + 0.8j)


@pytest.mark.parametrize(("k_prime", "expected"), [(1, (1, 0)), (2, (2, 0)), (3, (2, 1)), (4, (3, 1)), (7, (4, 3))])
def test_dimension_decomposition(k_prime: int, expected: tuple[int, int]) -> None:
    assert su2_dim_decomposition(k_prime).as_tuple() == expected


def test_decomposition_bases() -> None:
    decomposition = su2_dim_decomposition(4)
    assert decomposition.plus_basis == ({0: 1.0}, {1: 1.0, 3: 1.0}, {2: 1.0})
    assert decomposition.minus_basis == ({1: 1.0, 3: -1.0},)
    with pytest.raises(ValueError, match="k'=0"):
        su2_dim_decomposition(0)


@pytest.mark.parametrize("k_prime", [4, 5, 8])
def test_numeric_rank_matches_declared_dimensions(k_prime: int) -> None:
    plus, minus = su2_dim_decomposition(k_prime).as_tuple()
    assert su2_numeric_rank(k_prime, TAU, minus=False, seed=2) == plus
    assert su2_numeric_rank(k_prime, TAU, minus=True, seed=2) == minus


def test_orbifold_dimensions() -> None:
    for k in range(5):
        assert su2_orbifold_dimension_check(k) == (k + 1, k + 1)
    with pytest.raises(ValueError, match="k=-1"):
        su2_orbifold_dimension_check(-1)


def test_psi_basis_and_validation() -> None:
    basis = su2_psi_basis(2)
    assert [psi.m for psi in basis] == [0, 1, 2]
    assert all(psi.k_prime == 8 and not psi.is_orbifold for psi in basis)
    assert basis[0].descent_t == pytest.approx(0.25)
    assert basis[2].frequency == 3

    orbifold = su2_psi_basis(2, orbifold=True)
    assert all(psi.k_prime == 7 and psi.is_orbifold for psi in orbifold)

    with pytest.raises(ValueError, match="outside 0..1"):
        SU2Psi(k=1, m=2)
    with pytest.raises(ValueError, match="2k\\+4 or 2k\\+3"):
        SU2Psi(k=0, m=0, k_prime=5)


def test_integral_image_descends_and_half_image_does_not() -> None:
    for psi in su2_psi_basis(1):
        assert su2_automorphy_residual(psi, TAU, seed=4) < 1e-9
        assert su2_descent_residual(psi, TAU, seed=4) < 1e-9
    for psi in su2_psi_basis(1, ThetaFamily.HALF):
        assert su2_automorphy_residual(psi, TAU, seed=4) > 1e-2


def test_image_series_is_odd() -> None:
    image = su2_image_series(SU2Psi(k=1, m=0), TAU)
    for z in (0.11 + 0.03j, 0.4 - 0.1j):
        assert image(np.array([-z])) == pytest.approx(-image(np.array([z])), abs=1e-12)
    assert abs(image(np.array([0.0]))) < 1e-12
    with pytest.raises(ValueError, match="t must be > 0"):
        su2_image_series(SU2Psi(k=1, m=0), TAU, t=0.0)


@pytest.mark.parametrize("k", [0, 1, 2])
def test_su2_gram_is_identity(k: int) -> None:
    lines: list[str] = []
    report = su2_gram(k, TAU, echo=lines.append)

    assert report.kind == "su2"
    assert report.dimension == k + 1
    assert report.labels == tuple(str(m) for m in range(k + 1))
    assert report.parameters["k_prime"] == 2 * k + 4
    assert report.is_identity(1e-6)
    assert lines[-1].startswith(f"gram kind=su2 k={k} k_prime={2 * k + 4}")


def test_su2_gram_refinement() -> None:
    report = su2_gram(1, TAU, refine=True)
    assert report.refinement_delta is not None
    assert report.refinement_delta < 1e-6

    with pytest.raises(ConvergenceError, match="N=4 and N=6"):
        su2_gram(2, TAU, N=4, refine=True)


@pytest.mark.parametrize("k", [1, 2])
def test_product_map_lands_in_the_odd_space(k: int) -> None:
    assert su2_product_isomorphism_check(k, TAU, seed=5) < 1e-7


def test_product_map_needs_positive_level() -> None:
    with pytest.raises(ValueError, match="k >= 1"):
        su2_product_isomorphism_check(0, TAU)
