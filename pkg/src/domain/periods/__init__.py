"""Exact canonical bases, elementary divisors and period matrices for sl(n)."""

from domain.periods.canonical import (
    CanonicalBasisData,
    canonical_basis,
    cartan_matrix,
    completable_check,
    elementary_divisors,
    period_matrix_closed_form,
    period_matrix_from_basis,
    root_basis_change,
    tau_basis_change,
)
from domain.periods.modular import PeriodEquivalence, gamma_n_membership, period_equivalence

__all__ = [
    "CanonicalBasisData",
    "PeriodEquivalence",
    "canonical_basis",
    "cartan_matrix",
    "completable_check",
    "elementary_divisors",
    "gamma_n_membership",
    "period_equivalence",
    "period_matrix_closed_form",
    "period_matrix_from_basis",
    "root_basis_change",
    "tau_basis_change",
]
