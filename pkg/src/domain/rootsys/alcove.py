"""Affine Weyl group machinery: dilated alcoves, orbit reduction, orbit enumeration."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor, pi, sin, sqrt
from typing import Final

import numpy as np

from domain.errors import ResourceLimitError, SingularWeightError
from domain.rootsys.lattice import RootSystem, Weight, epsilon_coordinates, inner_product
from domain.rootsys.weyl import (
    WeylElement,
    highest_root_reflection,
    simple_reflection,
    weyl_group,
)

MAX_REDUCTION_STEPS: Final[int] = 1_000_000


@dataclass(frozen=True)
class AffineOrbitWitness:
    """mu = weyl(base) + level_shifted * beta, beta in root coordinates."""

    base: Weight
    level_shifted: int
    weyl: WeylElement
    translation: tuple[int, ...]

    @property
    def sign(self) -> int:
        return self.weyl.sign

    def reconstruct(self, rs: RootSystem) -> Weight:
        shift = rs.from_root_coordinates(self.translation).scaled(self.level_shifted)
        return self.weyl.act(self.base) + shift


def on_affine_wall(rs: RootSystem, mu: Weight, level: int) -> bool:
    """True when <mu, alpha> is a multiple of level for some positive root alpha."""
    coords = epsilon_coordinates(mu.labels)
    for i in range(rs.n):
        for j in range(i + 1, rs.n):
            if (coords[i] - coords[j]) % level == 0:
                return True
    return False


def alcove_reduce(rs: RootSystem, mu: Weight, level_shifted: int) -> AffineOrbitWitness:
    """Move a regular weight into the open fundamental alcove of the dilated affine action."""
    if mu.rank != rs.l:
        raise ValueError(f"expected a weight of rank {rs.l}, got {mu}")
    if level_shifted < rs.n:
        raise ValueError(f"level_shifted must be >= n={rs.n}, got {level_shifted}")
    if on_affine_wall(rs, mu, level_shifted):
        raise SingularWeightError(
            f"singular weight: mu={mu} lies on a wall of the level-{level_shifted} affine action"
        )

    base_labels, linear = _reflect_into_alcove(rs, list(mu.labels), level_shifted, strict=True)
    base = Weight(tuple(base_labels))
    weyl = linear.inverse()
    difference = mu - weyl.act(base)
    translation = _root_coordinates_of_multiple(rs, difference, level_shifted)
    return AffineOrbitWitness(
        base=base,
        level_shifted=level_shifted,
        weyl=weyl,
        translation=translation,
    )


def level_orbit_representative(
    rs: RootSystem,
    weight: Weight,
    level: int,
) -> tuple[Weight, WeylElement]:
    """The unique point of the closed alcove D_level in the W x level*Lambda_R orbit of weight.

    Returns the representative and the linear part u with representative = u(weight) + level*beta.
    """
    if level < 1:
        raise ValueError(f"level must be >= 1, got {level}")
    labels, linear = _reflect_into_alcove(rs, list(weight.labels), level, strict=False)
    return Weight(tuple(labels)), linear


def lattice_class_key(rs: RootSystem, weight: Weight, level: int) -> tuple[int, ...]:
    """Exact class of weight in Lambda_W / (level * Lambda_R)."""
    scaled = rs.scaled_cartan_inv @ weight.as_array()
    return tuple(int(value) % (rs.n * level) for value in scaled)


def affine_orbit(
    rs: RootSystem,
    gamma: Weight,
    k: int,
    cutoff: Fraction | int | float,
) -> list[tuple[Weight, int]]:
    """Dominant lambda with lambda+rho in the (W x (k+n)Lambda_R)-orbit of gamma+rho.

    Only |lambda+rho|^2 <= cutoff is kept; results are ordered by that norm, then labels.
    """
    _check_level_weight(rs, gamma, k)
    cutoff = Fraction(cutoff)
    if cutoff <= 0:
        raise ValueError(f"cutoff must be > 0, got {cutoff}")

    level = k + rs.n
    base = gamma + rs.rho
    base_norm = float(inner_product(rs, base, base))
    bound = (sqrt(float(cutoff)) + sqrt(base_norm)) / (level * _min_cartan_eigenvalue(rs) ** 0.5)
    q_max = int(bound) + 1

    axes = [np.arange(-q_max, q_max + 1, dtype=np.int64)] * rs.l
    grid = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, rs.l)
    shifts = level * (grid @ rs.cartan)
    limit = floor(cutoff * rs.n)

    found: list[tuple[int, tuple[int, ...], int]] = []
    for w in weyl_group(rs):
        image = np.asarray(w.act(base).labels, dtype=np.int64)
        candidates = image + shifts
        dominant = np.all(candidates > 0, axis=1)
        if not np.any(dominant):
            continue
        candidates = candidates[dominant]
        scaled_norms = np.einsum("ij,jk,ik->i", candidates, rs.scaled_cartan_inv, candidates)
        keep = scaled_norms <= limit
        for labels, norm in zip(candidates[keep], scaled_norms[keep]):
            found.append((int(norm), tuple(int(v) for v in labels), w.sign))

    found.sort(key=lambda item: (item[0], item[1]))
    return [(Weight(labels) - rs.rho, sign) for _, labels, sign in found]


def _reflect_into_alcove(
    rs: RootSystem,
    labels: list[int],
    level: int,
    *,
    strict: bool,
) -> tuple[list[int], WeylElement]:
    linear = WeylElement.identity(rs.n)
    theta = rs.highest_root.labels
    theta_reflection = highest_root_reflection(rs)
    steps = 0
    while True:
        negative = next((i for i, value in enumerate(labels) if value < 0), None)
        if negative is not None:
            value = labels[negative]
            root = rs.cartan[negative]
            labels = [labels[j] - value * int(root[j]) for j in range(rs.l)]
            linear = simple_reflection(rs, negative).compose(linear)
        elif sum(labels) > level:
            excess = sum(labels) - level
            labels = [labels[j] - excess * theta[j] for j in range(rs.l)]
            linear = theta_reflection.compose(linear)
        else:
            break
        steps += 1
        if steps > MAX_REDUCTION_STEPS:
            raise ResourceLimitError(
                f"alcove reduction exceeded {MAX_REDUCTION_STEPS} steps at level={level}"
            )

    if strict and (any(value <= 0 for value in labels) or sum(labels) >= level):
        raise SingularWeightError(f"singular weight: reduced labels {labels} touch a wall")
    return labels, linear


def _root_coordinates_of_multiple(
    rs: RootSystem,
    difference: Weight,
    level: int,
) -> tuple[int, ...]:
    scaled = rs.scaled_cartan_inv @ difference.as_array()
    divisor = rs.n * level
    if np.any(scaled % divisor):
        raise ArithmeticError(f"{difference} is not in {level} * Lambda_R")
    return tuple(int(value) // divisor for value in scaled)


def _min_cartan_eigenvalue(rs: RootSystem) -> float:
    return 4.0 * sin(pi / (2 * rs.n)) ** 2


def _check_level_weight(rs: RootSystem, gamma: Weight, k: int) -> None:
    if gamma.rank != rs.l:
        raise ValueError(f"expected a weight of rank {rs.l}, got {gamma}")
    if k < 0:
        raise ValueError(f"level must be >= 0, got k={k}")
    if not gamma.is_dominant() or sum(gamma.labels) > k:
        raise ValueError(f"gamma={gamma} is not in D_{k}")


__all__ = [
    "AffineOrbitWitness",
    "MAX_REDUCTION_STEPS",
    "affine_orbit",
    "alcove_reduce",
    "lattice_class_key",
    "level_orbit_representative",
    "on_affine_wall",
]
