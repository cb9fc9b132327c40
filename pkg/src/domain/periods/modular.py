"""The congruence group Gamma_n and the period matrices it relates."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from sympy import Matrix

from domain.periods.canonical import (
    CanonicalBasisData,
    _as_integer_matrix,
    _is_integral,
    canonical_basis,
    cartan_matrix,
)


def gamma_n_membership(n: int, B: Any) -> bool:
    """det B = 1 and the entries above the corner of the last column vanish mod n."""
    B = _as_integer_matrix(B, "B")
    l = n - 1
    if B.shape != (l, l):
        raise ValueError(f"B must be {l}x{l}, got {B.shape}")
    if B.det() != 1:
        raise ValueError(f"B must have det 1, got det={B.det()}")
    return all(B[r, l - 1] % n == 0 for r in range(l - 1))


@dataclass(frozen=True, eq=False)
class PeriodEquivalence:
    B: Matrix
    B_tilde: Matrix
    first: CanonicalBasisData
    second: CanonicalBasisData

    @property
    def omega_1(self) -> Matrix:
        return self.first.omega

    @property
    def omega_2(self) -> Matrix:
        return self.second.omega


def period_equivalence(n: int, B: Any, base: CanonicalBasisData | None = None) -> PeriodEquivalence:
    """Move a canonical pair by B in Gamma_n: A_2 = A_1 B^{-1}, A~_2 = A~_1 Delta^{-1} B^T Delta.

    The witness B~ = Delta^{-1} (B^T)^{-1} Delta satisfies B^T Delta B~ = Delta and is integral.
    """
    B = _as_integer_matrix(B, "B")
    if not gamma_n_membership(n, B):
        raise ValueError(f"B={B.tolist()} is not in Gamma_{n}")
    first = canonical_basis(n) if base is None else base
    Delta = Matrix.diag(*first.delta)
    B_tilde = Delta.inv() * B.T.inv() * Delta
    assert _is_integral(B_tilde), f"witness B~ is not integral for B={B.tolist()}"
    assert B.T * Delta * B_tilde == Delta

    A_2 = first.A * B.inv()
    A_tilde_2 = first.A_tilde * Delta.inv() * B.T * Delta
    assert _is_integral(A_2) and _is_integral(A_tilde_2)
    omega_2 = B * first.omega * B.T
    assert omega_2 == A_2.inv() * cartan_matrix(n).inv() * A_2.inv().T
    second = CanonicalBasisData(n=n, A=A_2, A_tilde=A_tilde_2, delta=first.delta, omega=omega_2)
    return PeriodEquivalence(B=B, B_tilde=B_tilde, first=first, second=second)


__all__ = ["PeriodEquivalence", "gamma_n_membership", "period_equivalence"]
