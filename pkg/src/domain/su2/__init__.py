"""SU(2): half-normalized theta functions, their symmetric parts and the psi families."""

from domain.su2.spaces import (
    SU2Decomposition,
    SU2Psi,
    combination_series,
    su2_automorphy_residual,
    su2_descent_residual,
    su2_dim_decomposition,
    su2_gram,
    su2_image_series,
    su2_measure,
    su2_numeric_rank,
    su2_orbifold_dimension_check,
    su2_product_isomorphism_check,
    su2_psi_basis,
)
from domain.su2.theta import (
    SU2Theta,
    su2_automorphy_factor,
    su2_half_shift_residual,
    su2_heat_residual,
    su2_quasi_periodicity_residual,
    su2_reflection_residual,
    su2_series,
    su2_theta_eval,
    su2_theta_eval_certified,
)

__all__ = [
    "SU2Decomposition",
    "SU2Psi",
    "SU2Theta",
    "combination_series",
    "su2_automorphy_factor",
    "su2_automorphy_residual",
    "su2_descent_residual",
    "su2_dim_decomposition",
    "su2_gram",
    "su2_half_shift_residual",
    "su2_heat_residual",
    "su2_image_series",
    "su2_measure",
    "su2_numeric_rank",
    "su2_orbifold_dimension_check",
    "su2_product_isomorphism_check",
    "su2_psi_basis",
    "su2_quasi_periodicity_residual",
    "su2_reflection_residual",
    "su2_series",
    "su2_theta_eval",
    "su2_theta_eval_certified",
]
