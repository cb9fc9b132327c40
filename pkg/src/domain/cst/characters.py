"""Irreducible characters of SU(n) on the complexified maximal torus."""

from __future__ import annotations

from collections.abc import Sequence
from fractions import Fraction
from typing import Final

import numpy as np

from domain.common import TorusPoint, as_point
from domain.nonabelian.theta import sigma_eval
from domain.rootsys import RootSystem, Weight, signed_orbit

SIGMA_THRESHOLD: Final[float] = 1e-12
FALLBACK_RADIUS: Final[float] = 0.05
FALLBACK_NODES: Final[int] = 64

PointLike = TorusPoint | Sequence[complex] | np.ndarray | complex


def weyl_dimension(rs: RootSystem, lam: Weight) -> int:
    """prod over positive roots of <lam+rho, alpha> / <rho, alpha>."""
    if lam.rank != rs.l:
        raise ValueError(f"expected a weight of rank {rs.l}, got {lam}")
    if not lam.is_dominant():
        raise ValueError(f"weyl_dimension requires a dominant weight, got {lam}")
    shifted = lam + rs.rho
    value = Fraction(1)
    for root in rs.positive_roots:
        pairing = sum(shifted.labels[r] for r in range(rs.l) if root[r])
        value *= Fraction(pairing, sum(root))
    assert value.denominator == 1, f"non-integral Weyl dimension {value} for {lam}"
    return int(value)


def character_numerator(rs: RootSystem, lam: Weight, v: PointLike) -> complex:
    """sum_w eps(w) exp(2 pi i w(lam+rho)(v))."""
    z = as_point(v)
    images, signs = signed_orbit(rs, lam + rs.rho)
    return complex(np.sum(signs * np.exp(2j * np.pi * (images @ z))))


def character_eval(rs: RootSystem, lam: Weight, v: PointLike) -> complex:
    """chi_lam(v) by the Weyl character formula, with a fallback on the zero set of sigma."""
    if not lam.is_dominant():
        raise ValueError(f"characters are indexed by dominant weights, got {lam}")
    z = as_point(v)
    denominator = sigma_eval(rs, z)
    if abs(denominator) >= SIGMA_THRESHOLD:
        return character_numerator(rs, lam, z) / denominator
    if np.allclose(z, np.rint(z.real), atol=1e-12):
        return complex(weyl_dimension(rs, lam))
    return _circle_mean(rs, lam, z)


def _circle_mean(rs: RootSystem, lam: Weight, z: np.ndarray) -> complex:
    # chi is entire, so it equals its mean over a small circle in a fixed complex line.
    direction = rs.rho_coweight + 0.1 * np.sqrt(np.arange(2, rs.l + 2))
    direction = direction / np.linalg.norm(direction)
    radius = FALLBACK_RADIUS
    for _ in range(8):
        angles = 2.0 * np.pi * np.arange(FALLBACK_NODES) / FALLBACK_NODES
        nodes = z[None, :] + radius * np.exp(1j * angles)[:, None] * direction[None, :]
        denominators = np.asarray([sigma_eval(rs, node) for node in nodes])
        if np.min(np.abs(denominators)) >= SIGMA_THRESHOLD:
            numerators = np.asarray([character_numerator(rs, lam, node) for node in nodes])
            return complex(np.mean(numerators / denominators))
        radius *= 0.7
    raise ArithmeticError(f"no regular circle found around v={z.tolist()}")


__all__ = [
    "character_eval",
    "character_numerator",
    "weyl_dimension",
]
