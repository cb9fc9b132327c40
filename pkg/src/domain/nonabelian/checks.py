"""Structural checks: Looijenga dimensions and Weyl-invariant degree-zero line bundles."""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass
from itertools import product
from math import comb, prod

import numpy as np
from sympy import ZZ, Matrix
from sympy.matrices.normalforms import invariant_factors

from domain.common import EllipticModulus
from domain.errors import ConvergenceError
from domain.nonabelian.theta import plain_series
from domain.rootsys import (
    RootSystem,
    Weight,
    lattice_class_key,
    level_k_weights,
    level_orbit_representative,
    signed_orbit,
)

RANK_RTOL = 1e-8
SAMPLE_HALF_WIDTH = 0.25
MAX_SAMPLE_ATTEMPTS = 3


@dataclass(frozen=True)
class LooijengaReport:
    n: int
    level: int
    dim_plus: int
    dim_minus: int
    expected_plus: int
    expected_minus: int
    samples: int

    @property
    def matches(self) -> bool:
        return self.dim_plus == self.expected_plus and self.dim_minus == self.expected_minus

    def as_tuple(self) -> tuple[int, int]:
        return self.dim_plus, self.dim_minus


@dataclass(frozen=True)
class PicardReport:
    n: int
    factors: tuple[int, ...]
    order: int

    @property
    def is_trivial(self) -> bool:
        return self.order == 1


def weight_classes(rs: RootSystem, level: int) -> dict[tuple[int, ...], Weight]:
    """One representative per class of Lambda_W / (level Lambda_R), from the label box [0, n level)^l."""
    if level < 1:
        raise ValueError(f"level must be >= 1, got {level}")
    classes: dict[tuple[int, ...], Weight] = {}
    for labels in product(range(rs.n * level), repeat=rs.l):
        weight = Weight(labels)
        classes.setdefault(lattice_class_key(rs, weight, level), weight)
    return classes


def plus_frame_labels(rs: RootSystem, level: int) -> list[Weight]:
    """Canonical representatives of Lambda_W / (W x level Lambda_R), cross-checked by orbit count."""
    labels = level_k_weights(rs, level)
    orbit_reps = {
        level_orbit_representative(rs, weight, level)[0] for weight in weight_classes(rs, level).values()
    }
    if orbit_reps != set(labels):
        raise ArithmeticError(
            f"orbit count {len(orbit_reps)} disagrees with |D_{level}| = {len(labels)} for n={rs.n}"
        )
    return labels


def looijenga_dim_check(
    rs: RootSystem,
    level: int,
    *,
    tau: EllipticModulus | None = None,
    seed: int = 0,
    echo: Callable[[str], None] | None = None,
) -> LooijengaReport:
    """Numeric ranks of the W-invariant and W-anti-invariant theta spans at the given level."""
    if rs.n < 3:
        raise ValueError("looijenga_dim_check covers n >= 3; SU(2) lives in the su2 package")
    tau = tau or EllipticModulus(1j)
    frame = level_k_weights(rs, level)
    classes = _orbit_classes(rs, frame, level)
    class_index = {key: index for index, key in enumerate(classes)}
    expected_plus = len(frame)
    expected_minus = comb(level - 1, level - rs.n) if level >= rs.n else 0

    rng = np.random.default_rng(seed)
    samples = 4 * len(frame) + 10
    ranks: list[tuple[int, int]] = []
    for attempt in range(MAX_SAMPLE_ATTEMPTS + 1):
        x = rng.random((samples, rs.l))
        s = (2.0 * rng.random((samples, rs.l)) - 1.0) * SAMPLE_HALF_WIDTH
        points = x + tau.tau * s
        plain = np.empty((samples, len(classes)), dtype=np.complex128)
        for key, weight in classes.items():
            plain[:, class_index[key]] = plain_series(rs, weight, level, tau).evaluate_many(points)[0]
        envelope = np.exp(-np.pi * level * tau.tau2 * np.einsum("pi,ij,pj->p", s, rs.cartan, s))
        plain *= envelope[:, None]
        norms = np.linalg.norm(plain, axis=1)
        plain = plain[norms > 0.0] / norms[norms > 0.0, None]

        plus_matrix, minus_matrix = _symmetrized_columns(rs, frame, level, plain, class_index)
        scale = float(np.linalg.svd(plus_matrix, compute_uv=False)[0])
        ranks.append((_numeric_rank(plus_matrix, scale), _numeric_rank(minus_matrix, scale)))
        if echo is not None:
            echo(
                f"looijenga n={rs.n} level={level} attempt={attempt} samples={samples} "
                f"dim_plus={ranks[-1][0]} dim_minus={ranks[-1][1]}"
            )
        if len(ranks) >= 2 and ranks[-1] == ranks[-2]:
            return LooijengaReport(
                n=rs.n,
                level=level,
                dim_plus=ranks[-1][0],
                dim_minus=ranks[-1][1],
                expected_plus=expected_plus,
                expected_minus=expected_minus,
                samples=samples,
            )
        samples *= 2
    raise ConvergenceError(f"sampled ranks did not settle for n={rs.n} level={level}: {ranks}")


def _orbit_classes(rs: RootSystem, frame: list[Weight], level: int) -> dict[tuple[int, ...], Weight]:
    classes: dict[tuple[int, ...], Weight] = {}
    for weight in frame:
        for image in signed_orbit(rs, weight)[0]:
            image_weight = Weight(tuple(image))
            classes.setdefault(lattice_class_key(rs, image_weight, level), image_weight)
    return classes


def _symmetrized_columns(
    rs: RootSystem,
    frame: list[Weight],
    level: int,
    plain: np.ndarray,
    class_index: dict[tuple[int, ...], int],
) -> tuple[np.ndarray, np.ndarray]:
    plus = np.zeros((plain.shape[0], len(frame)), dtype=np.complex128)
    minus = np.zeros_like(plus)
    for column, weight in enumerate(frame):
        images, signs = signed_orbit(rs, weight)
        for image, sign in zip(images, signs):
            index = class_index[lattice_class_key(rs, Weight(tuple(image)), level)]
            plus[:, column] += plain[:, index]
            minus[:, column] += sign * plain[:, index]
    return plus, minus


def _numeric_rank(matrix: np.ndarray, scale: float) -> int:
    if matrix.size == 0 or scale == 0.0:
        return 0
    singular = np.linalg.svd(matrix, compute_uv=False)
    return int(np.sum(singular > RANK_RTOL * scale))


def picard_invariant_check(rs: RootSystem) -> PicardReport:
    """Order of the Weyl-invariant part of Pic^0 of the torus h / (Lambda + tau Lambda).

    A point x is invariant iff <alpha_j, x> alpha_j lies in the weight lattice for every j,
    so each coordinate <alpha_j, x> ranges over (1/g_j) Z / Z with g_j the invariant factor of
    the label column of alpha_j. Real and tau parts contribute one copy each.
    """
    factors: list[int] = []
    for j in range(rs.l):
        column = Matrix([[int(value)] for value in rs.cartan[:, j]])
        factors.extend(int(f) for f in invariant_factors(column, domain=ZZ))
    order = prod(factors) ** 2
    return PicardReport(n=rs.n, factors=tuple(factors), order=order)


__all__ = [
    "LooijengaReport",
    "PicardReport",
    "looijenga_dim_check",
    "picard_invariant_check",
    "plus_frame_labels",
    "weight_classes",
]
