"""Quadrature Gram matrices and the unitarity checks built on them."""

from domain.gram.descent import DescentReport, HallIntegrand, fundamental_domain_independence
from domain.gram.frames import (
    PREFACTOR_TOL,
    REFINEMENT_TOL,
    abelian_gram,
    frame_gram,
    hall_gram,
    hall_inner_product_check,
    hall_prefactor_cancellation,
    nonabelian_gram,
    refined_gram,
)
from domain.gram.quadrature import DEFAULT_POINTS, QuadratureGrid, default_points, generic_offset
from domain.gram.report import GramReport

__all__ = [
    "DEFAULT_POINTS",
    "DescentReport",
    "GramReport",
    "HallIntegrand",
    "PREFACTOR_TOL",
    "QuadratureGrid",
    "REFINEMENT_TOL",
    "abelian_gram",
    "default_points",
    "frame_gram",
    "fundamental_domain_independence",
    "generic_offset",
    "hall_gram",
    "hall_inner_product_check",
    "hall_prefactor_cancellation",
    "nonabelian_gram",
    "refined_gram",
]
