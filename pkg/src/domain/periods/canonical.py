"""Canonical bases of Lambda_R + tau Lambda_R and the period matrix for sl(n), in exact arithmetic.

A basis beta = alpha A of Lambda_R and a basis beta~ = tau alpha A~ of tau Lambda_R form a
canonical pair when A^T C A~ = Delta. The period matrix Omega then writes beta~ Delta^{-1}
in terms of beta; it is tau times the rational matrix A^{-1} C^{-1} A^{-T}.
For the A-series the root and coroot lattices coincide, so the same C serves both.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Any

import numpy as np
from sympy import ZZ, Matrix, Rational, eye, zeros
from sympy.matrices.normalforms import invariant_factors

from domain.abelian.torus import PolarizedTorus
from domain.common import EllipticModulus
from domain.rootsys import RootSystem


def cartan_matrix(n: int) -> Matrix:
    return Matrix(RootSystem(n).cartan.tolist())


def _as_integer_matrix(raw: Any, name: str) -> Matrix:
    matrix = Matrix(raw)
    if not matrix.is_square:
        raise ValueError(f"{name} must be square, got shape {matrix.shape}")
    if any(not entry.is_integer for entry in matrix):
        raise ValueError(f"{name} must have integer entries, got {matrix.tolist()}")
    return matrix


def _is_integral(matrix: Matrix) -> bool:
    return all(entry.is_integer for entry in matrix)


@dataclass(frozen=True, eq=False)
class CanonicalBasisData:
    """A canonical pair (A, A~) with its elementary divisors and the tau-coefficient of Omega."""

    n: int
    A: Matrix
    A_tilde: Matrix
    delta: tuple[int, ...]
    omega: Matrix

    def __post_init__(self) -> None:
        l = self.n - 1
        C = cartan_matrix(self.n)
        Delta = Matrix.diag(*self.delta)
        if self.A.shape != (l, l) or self.A_tilde.shape != (l, l):
            raise ValueError(f"A and A~ must be {l}x{l}")
        if self.A.det() != 1 or self.A_tilde.det() != 1:
            raise ValueError(f"det A = {self.A.det()}, det A~ = {self.A_tilde.det()}; both must be 1")
        if self.A.T * C * self.A_tilde != Delta:
            raise ValueError("A^T C A~ != Delta")
        if any(b % a for a, b in zip(self.delta, self.delta[1:])):
            raise ValueError(f"elementary divisors must divide each other, got {self.delta}")
        if reduce(lambda a, b: a * b, self.delta, 1) != self.n:
            raise ValueError(f"elementary divisors must multiply to {self.n}, got {self.delta}")
        if self.omega != self.omega.T:
            raise ValueError("Omega must be symmetric")
        if not self.omega.is_positive_definite:
            raise ValueError("Omega / tau must be positive definite")
        if not _is_integral(self.n * self.omega):
            raise ValueError(f"Omega entries must lie in (tau/{self.n})Z")

    @property
    def l(self) -> int:
        return self.n - 1

    def omega_at(self, tau: complex | EllipticModulus) -> np.ndarray:
        value = tau.tau if isinstance(tau, EllipticModulus) else complex(tau)
        return value * np.array(self.omega.tolist(), dtype=np.float64)

    def as_torus(self, tau: complex | EllipticModulus, k: int) -> PolarizedTorus:
        return PolarizedTorus(l=self.l, omega=self.omega_at(tau), delta=self.delta, k=k)

    def as_json_dict(self) -> dict[str, Any]:
        return {
            "n": self.n,
            "A": [[int(x) for x in row] for row in self.A.tolist()],
            "A_tilde": [[int(x) for x in row] for row in self.A_tilde.tolist()],
            "delta": list(self.delta),
            "omega_over_tau": [[str(x) for x in row] for row in self.omega.tolist()],
            "lattice": "root lattice, identified with the coroot lattice for SU(n)",
        }


def root_basis_change(n: int) -> Matrix:
    """beta = (alpha_1, ..., alpha_{l-1}, n lambda_1): the identity with last column (n-1, ..., 1)."""
    l = n - 1
    A = eye(l)
    for r in range(l):
        A[r, l - 1] = n - 1 - r
    return A


def tau_basis_change(n: int) -> Matrix:
    """beta~_i = tau lambda_i - (n-i) tau lambda_l for i < l, beta~_l = n tau lambda_l, in root coordinates."""
    l = n - 1
    A_tilde = zeros(l, l)
    for i in range(1, l):
        for r in range(i + 1, l + 1):
            A_tilde[r - 1, i - 1] = i - r
    for r in range(1, l + 1):
        A_tilde[r - 1, l - 1] = r
    return A_tilde


def elementary_divisors(n: int) -> tuple[int, ...]:
    """Elementary divisors of E = [[0, C], [-C, 0]] on Lambda_R + tau Lambda_R, one per pair."""
    if n < 2:
        raise ValueError(f"n must be >= 2, got n={n}")
    C = cartan_matrix(n)
    l = n - 1
    E = zeros(2 * l, 2 * l)
    E[:l, l:] = C
    E[l:, :l] = -C
    factors = [int(f) for f in invariant_factors(E, domain=ZZ)]
    return tuple(abs(f) for f in factors[::2])


def period_matrix_from_basis(n: int, A: Any) -> Matrix:
    """A^{-1} C^{-1} A^{-T}, the tau-coefficient of Omega for the basis beta = alpha A."""
    A = _as_integer_matrix(A, "A")
    if abs(A.det()) != 1:
        raise ValueError(f"A must be unimodular, got det={A.det()}")
    A_inv = A.inv()
    return A_inv * cartan_matrix(n).inv() * A_inv.T


def period_matrix_closed_form(n: int) -> Matrix:
    """Omega/tau entrywise: (n-i)(l-j) for i <= j < l, i-l in the last column, l/n in the corner."""
    if n < 2:
        raise ValueError(f"n must be >= 2, got n={n}")
    l = n - 1
    omega = zeros(l, l)
    for i in range(1, l + 1):
        for j in range(i, l + 1):
            if j < l:
                value = Rational((n - i) * (l - j))
            elif i < l:
                value = Rational(i - l)
            else:
                value = Rational(l, n)
            omega[i - 1, j - 1] = value
            omega[j - 1, i - 1] = value
    return omega


def canonical_basis(n: int) -> CanonicalBasisData:
    """The canonical basis for sl(n); n = 2 gives the pair (alpha, tau alpha) with Delta = (2).

    In the half-normalized SU(2) polarization the same pair has Delta = (1); that rescaling
    is applied by the su2 package, not here.
    """
    if n < 2:
        raise ValueError(f"n must be >= 2, got n={n}")
    A = root_basis_change(n)
    A_tilde = tau_basis_change(n)
    delta = elementary_divisors(n)
    derived_tilde = cartan_matrix(n).inv() * A.inv().T * Matrix.diag(*delta)
    assert derived_tilde == A_tilde, f"closed-form A~ disagrees with C^-1 A^-T Delta for n={n}"
    omega = period_matrix_closed_form(n)
    assert omega == period_matrix_from_basis(n, A), f"closed-form Omega disagrees with A^-1 C^-1 A^-T for n={n}"
    return CanonicalBasisData(n=n, A=A, A_tilde=A_tilde, delta=delta, omega=omega)


def completable_check(n: int, A: Any) -> bool:
    """True iff beta Delta^{-1} = alpha A Delta^{-1} is a basis of the weight lattice."""
    A = _as_integer_matrix(A, "A")
    if A.shape != (n - 1, n - 1):
        raise ValueError(f"A must be {n - 1}x{n - 1}, got {A.shape}")
    if abs(A.det()) != 1:
        raise ValueError(f"A must be unimodular, got det={A.det()}")
    delta = elementary_divisors(n)
    candidate = cartan_matrix(n) * A * Matrix.diag(*delta).inv()
    return _is_integral(candidate) and abs(candidate.det()) == 1


__all__ = [
    "CanonicalBasisData",
    "canonical_basis",
    "cartan_matrix",
    "completable_check",
    "elementary_divisors",
    "period_matrix_closed_form",
    "period_matrix_from_basis",
    "root_basis_change",
    "tau_basis_change",
]
