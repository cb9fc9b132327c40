"""Shared value types for points and moduli of the elliptic curve."""

from __future__ import annotations

import re
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Final

import numpy as np

DEFAULT_TOL: Final[float] = 1e-12


def parse_complex(text: str) -> complex:
    """Parse "a+bi", "a-bj", "2i" or a plain real into a complex number."""
    cleaned = text.strip().replace(" ", "")
    if not cleaned:
        raise ValueError("empty complex literal")
    cleaned = cleaned.replace("i", "j").replace("I", "j").replace("J", "j")
    if cleaned in {"j", "+j"}:
        return 1j
    if cleaned == "-j":
        return -1j
    cleaned = re.sub(r"(^|[+-])j", r"\g<1>1j", cleaned)
    try:
        return complex(cleaned)
    except ValueError as exc:
        raise ValueError(f"invalid complex literal: {text!r}") from exc


def format_complex(value: complex) -> str:
    """Inverse of parse_complex for CLI echo lines."""
    sign = "+" if value.imag >= 0 else "-"
    return f"{value.real:g}{sign}{abs(value.imag):g}i"


@dataclass(frozen=True)
class EllipticModulus:
    """A point tau of the upper half plane."""

    tau: complex

    def __post_init__(self) -> None:
        tau = complex(self.tau)
        if not tau.imag > 0.0:
            raise ValueError(f"Im(tau) must be > 0, got tau={tau}")
        object.__setattr__(self, "tau", tau)

    @property
    def tau2(self) -> float:
        return self.tau.imag

    @classmethod
    def parse(cls, text: str) -> EllipticModulus:
        return cls(parse_complex(text))


@dataclass(frozen=True)
class TorusPoint:
    """Coroot coordinates z_j of v = sum z_j alpha_j-check in the complexified Cartan."""

    coords: tuple[complex, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coords", tuple(complex(c) for c in self.coords))

    @property
    def rank(self) -> int:
        return len(self.coords)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.coords, dtype=np.complex128)

    @classmethod
    def from_parts(cls, x: Sequence[float], s: Sequence[float], tau: complex) -> TorusPoint:
        """v = x + tau*s for real coordinates x, s."""
        return cls(tuple(complex(xi) + tau * complex(si) for xi, si in zip(x, s, strict=True)))


def as_point(v: TorusPoint | Sequence[complex] | np.ndarray | complex) -> np.ndarray:
    """Normalize any accepted point representation to a 1-d complex array."""
    if isinstance(v, TorusPoint):
        return v.as_array()
    array = np.atleast_1d(np.asarray(v, dtype=np.complex128))
    if array.ndim != 1:
        raise ValueError(f"expected a single point, got array of shape {array.shape}")
    return array


def random_points(
    rng: np.random.Generator,
    *,
    count: int,
    rank: int,
    tau: complex,
    imag_scale: float = 0.5,
) -> list[np.ndarray]:
    """Sample v = x + tau*s with x uniform in [0,1)^l and s uniform in [-imag_scale, imag_scale)^l."""
    points = []
    for _ in range(count):
        x = rng.random(rank)
        s = (2.0 * rng.random(rank) - 1.0) * imag_scale
        points.append(x + tau * s)
    return points


__all__ = [
    "DEFAULT_TOL",
    "EllipticModulus",
    "TorusPoint",
    "as_point",
    "format_complex",
    "parse_complex",
    "random_points",
]
