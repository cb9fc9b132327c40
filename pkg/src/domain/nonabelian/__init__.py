"""Genus-one non-abelian theta functions for SU(n), n >= 3."""

from domain.nonabelian.checks import (
    LooijengaReport,
    PicardReport,
    looijenga_dim_check,
    picard_invariant_check,
    plus_frame_labels,
    weight_classes,
)
from domain.nonabelian.theta import (
    NATheta,
    hat_frame_eval,
    minus_frame,
    minus_series,
    na_automorphy_factor,
    na_heat_residual,
    natheta_eval,
    natheta_eval_certified,
    plain_series,
    quasi_periodicity_residual,
    sigma_eval,
    symmetrized_series,
    weyl_symmetry_residual,
)

__all__ = [
    "LooijengaReport",
    "NATheta",
    "PicardReport",
    "hat_frame_eval",
    "looijenga_dim_check",
    "minus_frame",
    "minus_series",
    "na_automorphy_factor",
    "na_heat_residual",
    "natheta_eval",
    "natheta_eval_certified",
    "picard_invariant_check",
    "plain_series",
    "plus_frame_labels",
    "quasi_periodicity_residual",
    "sigma_eval",
    "symmetrized_series",
    "weight_classes",
    "weyl_symmetry_residual",
]
