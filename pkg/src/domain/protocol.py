"""Shared protocols and enums for theta evaluators."""

from __future__ import annotations

from enum import Enum
from typing import Protocol, runtime_checkable

import numpy as np


class Symmetry(str, Enum):
    """How a non-abelian theta series is symmetrized over the Weyl group."""

    PLAIN = "plain"
    PLUS = "plus"
    MINUS = "minus"
    HATPLUS = "hatplus"


class ThetaFamily(str, Enum):
    """The two SU(2) theta families: integral, and the half family with (-1)^p inserted."""

    INTEGRAL = "integral"
    HALF = "half"


class EvalKind(str, Enum):
    """Point evaluators exposed by the CLI."""

    THETA = "theta"
    CHARACTER = "character"
    CST_PSI = "cst-psi"
    SIGMA = "sigma"


class OutputFormat(str, Enum):
    JSON = "json"
    CSV = "csv"


@runtime_checkable
class PointEvaluator(Protocol):
    """Anything that evaluates to a complex number at a point of the complexified torus."""

    def __call__(self, z: np.ndarray) -> complex: ...


__all__ = [
    "EvalKind",
    "OutputFormat",
    "PointEvaluator",
    "Symmetry",
    "ThetaFamily",
]
