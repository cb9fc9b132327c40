"""Tests for canonical bases, elementary divisors, period matrices and Gamma_n."""

from __future__ import annotations

import numpy as np
import pytest
from sympy import Matrix, Rational, eye

from domain.periods import (
    CanonicalBasisData,
    canonical_basis,
    cartan_matrix,
    completable_check,
    elementary_divisors,
    gamma_n_membership,
    period_equivalence,
    period_matrix_closed_form,
    period_matrix_from_basis,
    root_basis_change,
    tau_basis_change,
)


def test_su3_canonical_basis() -> None:
    data = canonical_basis(3)

    assert data.A == Matrix([[1, 2], [0, 1]])
    assert data.delta == (1, 3)
    assert data.omega == Matrix([[2, -1], [-1, Rational(2, 3)]])
    assert data.A.T * cartan_matrix(3) * data.A_tilde == Matrix.diag(1, 3)


def test_su2_canonical_basis() -> None:
    data = canonical_basis(2)
    assert data.delta == (2,)
    assert data.omega == Matrix([[Rational(1, 2)]])


@pytest.mark.parametrize(("n", "expected"), [(2, (2,)), (3, (1, 3)), (4, (1, 1, 4)), (6, (1, 1, 1, 1, 6))])
def test_elementary_divisors(n: int, expected: tuple[int, ...]) -> None:
    assert elementary_divisors(n) == expected


@pytest.mark.parametrize("n", [2, 3, 4, 5, 7])
def test_closed_forms_agree_with_the_basis_formulas(n: int) -> None:
    A = root_basis_change(n)
    assert period_matrix_closed_form(n) == period_matrix_from_basis(n, A)
    assert tau_basis_change(n) == cartan_matrix(n).inv() * A.inv().T * Matrix.diag(*elementary_divisors(n))
    assert n * period_matrix_closed_form(n) == (n * period_matrix_closed_form(n)).applyfunc(int)


def test_completable_check() -> None:
    assert completable_check(3, root_basis_change(3))
    assert completable_check(5, root_basis_change(5))
    assert not completable_check(3, eye(2))
    with pytest.raises(ValueError, match="unimodular"):
        completable_check(3, [[2, 0], [0, 1]])
    with pytest.raises(ValueError, match="2x2"):
        completable_check(3, eye(3))


def test_period_matrix_from_basis_validation() -> None:
    with pytest.raises(ValueError, match="integer entries"):
        period_matrix_from_basis(3, [[Rational(1, 2), 0], [0, 2]])
    with pytest.raises(ValueError, match="unimodular"):
        period_matrix_from_basis(3, [[1, 0], [0, 2]])


def test_omega_at_and_torus() -> None:
    data = canonical_basis(3)
    omega = data.omega_at(2j)
    np.testing.assert_allclose(omega, 2j * np.array([[2.0, -1.0], [-1.0, 2.0 / 3.0]]))

    torus = data.as_torus(1j, 2)
    assert torus.delta == (1, 3)
    assert torus.k == 2

    payload = data.as_json_dict()
    assert payload["omega_over_tau"] == [["2", "-1"], ["-1", "2/3"]]
    assert payload["A"] == [[1, 2], [0, 1]]


def test_canonical_basis_data_validation() -> None:
    data = canonical_basis(3)
    with pytest.raises(ValueError, match="Delta"):
        CanonicalBasisData(n=3, A=data.A, A_tilde=data.A_tilde, delta=(3, 1), omega=data.omega)
    with pytest.raises(ValueError, match="n must be >= 2"):
        canonical_basis(1)


def test_gamma_n_membership() -> None:
    assert gamma_n_membership(3, [[1, 3], [0, 1]])
    assert gamma_n_membership(3, [[1, 0], [5, 1]])
    assert not gamma_n_membership(3, [[1, 1], [0, 1]])
    with pytest.raises(ValueError, match="det 1"):
        gamma_n_membership(3, [[2, 0], [0, 1]])


@pytest.mark.parametrize(
    ("n", "B"),
    [(3, [[1, 3], [0, 1]]), (3, [[1, 0], [1, 1]]), (4, [[1, 0, 4], [0, 1, 0], [0, 0, 1]])],
)
def test_period_equivalence(n: int, B: list[list[int]]) -> None:
    moved = period_equivalence(n, B)
    B_matrix = Matrix(B)
    Delta = Matrix.diag(*moved.first.delta)

    assert moved.omega_2 == B_matrix * moved.omega_1 * B_matrix.T
    assert B_matrix.T * Delta * moved.B_tilde == Delta
    assert all(entry.is_integer for entry in moved.B_tilde)
    assert moved.second.delta == moved.first.delta
    assert completable_check(n, moved.second.A)


def test_period_equivalence_rejects_matrices_outside_gamma_n() -> None:
    with pytest.raises(ValueError, match="not in Gamma_3"):
        period_equivalence(3, [[1, 1], [0, 1]])
