"""Coherent state transform on class functions of SU(n)."""

from domain.cst.characters import character_eval, character_numerator, weyl_dimension
from domain.cst.diagrams import diagram_check_coefficients, diagram_check_values
from domain.cst.transform import (
    ClassFunctionSeries,
    CSTImage,
    PsiDistribution,
    certified_cutoff,
    cst_apply,
    cst_psi_closed_form,
    damping_factor,
    psi_image_series,
    psi_truncate,
)

__all__ = [
    "CSTImage",
    "ClassFunctionSeries",
    "PsiDistribution",
    "certified_cutoff",
    "character_eval",
    "character_numerator",
    "cst_apply",
    "cst_psi_closed_form",
    "damping_factor",
    "diagram_check_coefficients",
    "diagram_check_values",
    "psi_image_series",
    "psi_truncate",
    "weyl_dimension",
]
