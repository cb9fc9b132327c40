"""Theta functions on polarized abelian varieties and the abelian CST."""

from domain.abelian.distributions import (
    BohrSommerfeldDistribution,
    bs_distribution_theta0,
    cst_mode_factor,
    dirac_coefficients,
    dirac_frame,
    label_space,
)
from domain.abelian.measure import HeatMeasure, heat_measure_eval
from domain.abelian.series import (
    LatticeThetaSeries,
    LocalTerms,
    SeriesCombination,
    ThetaSeries,
    as_combination,
    combine,
)
from domain.abelian.theta import (
    ThetaEvaluator,
    abelian_cst,
    abelian_heat_residual,
    theta_eval,
    theta_eval_certified,
)
from domain.abelian.torus import (
    CoordinateChange,
    PolarizedTorus,
    ThetaLabel,
    automorphy_factor,
    change_of_basis,
)

__all__ = [
    "BohrSommerfeldDistribution",
    "CoordinateChange",
    "HeatMeasure",
    "LatticeThetaSeries",
    "LocalTerms",
    "PolarizedTorus",
    "SeriesCombination",
    "ThetaEvaluator",
    "ThetaLabel",
    "ThetaSeries",
    "abelian_cst",
    "abelian_heat_residual",
    "as_combination",
    "automorphy_factor",
    "bs_distribution_theta0",
    "change_of_basis",
    "combine",
    "cst_mode_factor",
    "dirac_coefficients",
    "dirac_frame",
    "heat_measure_eval",
    "label_space",
    "theta_eval",
    "theta_eval_certified",
]
