"""Exceptions raised by the theta-function library."""

from __future__ import annotations


class ThetaForgeError(Exception):
    """Base class for library errors."""


class ResourceLimitError(ThetaForgeError, RuntimeError):
    """A configured size or step bound was exceeded."""


class SingularWeightError(ThetaForgeError, ValueError):
    """A weight lies on a (possibly affine) reflection wall."""


class SingularLocusError(ThetaForgeError, ValueError):
    """A denominator vanished to within threshold at the evaluation point."""


class ConvergenceError(ThetaForgeError, RuntimeError):
    """Refinement or resampling failed to settle a numerical result."""


class CheckNotApplicableError(ThetaForgeError):
    """A property check cannot be run for the configured parameters."""


__all__ = [
    "CheckNotApplicableError",
    "ConvergenceError",
    "ResourceLimitError",
    "SingularLocusError",
    "SingularWeightError",
    "ThetaForgeError",
]
