"""Theta functions for SU(n) on elliptic curves and their coherent state transform."""

from domain.common import DEFAULT_TOL, EllipticModulus, TorusPoint
from domain.errors import (
    CheckNotApplicableError,
    ConvergenceError,
    ResourceLimitError,
    SingularLocusError,
    SingularWeightError,
    ThetaForgeError,
)
from domain.protocol import EvalKind, OutputFormat, Symmetry, ThetaFamily

__all__ = [
    "CheckNotApplicableError",
    "ConvergenceError",
    "DEFAULT_TOL",
    "EllipticModulus",
    "EvalKind",
    "OutputFormat",
    "ResourceLimitError",
    "SingularLocusError",
    "SingularWeightError",
    "Symmetry",
    "ThetaFamily",
    "ThetaForgeError",
    "TorusPoint",
]
