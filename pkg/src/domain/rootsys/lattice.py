"""Exact rational data for the A_{n-1} root system."""

from __future__ import annotations

from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import factorial
from typing import Final

import numpy as np

MIN_RANK_PARAMETER: Final[int] = 2

RationalVector = Sequence[int | Fraction]


@dataclass(frozen=True, order=True)
class Weight:
    """Integer Dynkin labels in the fundamental-weight basis."""

    labels: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "labels", tuple(int(value) for value in self.labels))

    @property
    def rank(self) -> int:
        return len(self.labels)

    def is_dominant(self) -> bool:
        return all(value >= 0 for value in self.labels)

    def is_regular(self) -> bool:
        """No pairing with a simple coroot vanishes."""
        return all(value != 0 for value in self.labels)

    def __add__(self, other: Weight) -> Weight:
        _check_same_rank(self.labels, other.labels)
        return Weight(tuple(a + b for a, b in zip(self.labels, other.labels)))

    def __sub__(self, other: Weight) -> Weight:
        _check_same_rank(self.labels, other.labels)
        return Weight(tuple(a - b for a, b in zip(self.labels, other.labels)))

    def __neg__(self) -> Weight:
        return Weight(tuple(-a for a in self.labels))

    def scaled(self, factor: int) -> Weight:
        return Weight(tuple(factor * a for a in self.labels))

    def as_array(self) -> np.ndarray:
        return np.asarray(self.labels, dtype=np.int64)

    def __str__(self) -> str:
        return "(" + ",".join(str(value) for value in self.labels) + ")"


@dataclass(frozen=True)
class RootSystem:
    """Combinatorial data of A_{n-1}, the root system of SU(n)."""

    n: int

    def __post_init__(self) -> None:
        if self.n < MIN_RANK_PARAMETER:
            raise ValueError(f"n must be >= {MIN_RANK_PARAMETER}, got n={self.n}")

    @property
    def l(self) -> int:
        return self.n - 1

    @cached_property
    def cartan(self) -> np.ndarray:
        matrix = 2 * np.eye(self.l, dtype=np.int64)
        for i in range(self.l - 1):
            matrix[i, i + 1] = -1
            matrix[i + 1, i] = -1
        matrix.setflags(write=False)
        return matrix

    @cached_property
    def scaled_cartan_inv(self) -> np.ndarray:
        """n * C^{-1}, which is integral: entry (i, j) = min(i, j) * (n - max(i, j)), 1-based."""
        matrix = np.empty((self.l, self.l), dtype=np.int64)
        for i in range(1, self.l + 1):
            for j in range(1, self.l + 1):
                matrix[i - 1, j - 1] = min(i, j) * (self.n - max(i, j))
        matrix.setflags(write=False)
        return matrix

    @cached_property
    def cartan_inv(self) -> tuple[tuple[Fraction, ...], ...]:
        return tuple(
            tuple(Fraction(int(value), self.n) for value in row) for row in self.scaled_cartan_inv
        )

    @cached_property
    def cartan_inv_float(self) -> np.ndarray:
        matrix = self.scaled_cartan_inv.astype(np.float64) / self.n
        matrix.setflags(write=False)
        return matrix

    @property
    def rho(self) -> Weight:
        return Weight((1,) * self.l)

    @property
    def weyl_order(self) -> int:
        return factorial(self.n)

    @property
    def highest_root(self) -> Weight:
        if self.n == 2:
            return Weight((2,))
        return Weight((1,) + (0,) * (self.l - 2) + (1,))

    def simple_root(self, i: int) -> Weight:
        """alpha_i in Dynkin labels (row i of C), 0-based."""
        return Weight(tuple(int(value) for value in self.cartan[i]))

    @cached_property
    def positive_roots(self) -> tuple[tuple[int, ...], ...]:
        """Positive roots alpha_i + ... + alpha_{j-1} in root coordinates."""
        roots = []
        for i in range(self.l):
            for j in range(i + 1, self.n):
                roots.append(tuple(1 if i <= r < j else 0 for r in range(self.l)))
        return tuple(roots)

    @cached_property
    def positive_root_weights(self) -> tuple[Weight, ...]:
        """Positive roots in Dynkin labels."""
        return tuple(
            Weight(tuple(int(v) for v in self.cartan @ np.asarray(root, dtype=np.int64)))
            for root in self.positive_roots
        )

    @cached_property
    def rho_coweight(self) -> np.ndarray:
        """Coroot coordinates of rho-check; every positive root takes its height there."""
        vector = self.cartan_inv_float @ np.ones(self.l)
        vector.setflags(write=False)
        return vector

    def inner_product(self, a: Weight | RationalVector, b: Weight | RationalVector) -> Fraction:
        return inner_product(self, a, b)

    def norm_squared(self, a: Weight | RationalVector) -> Fraction:
        return inner_product(self, a, a)

    def to_root_coordinates(self, weight: Weight | RationalVector) -> tuple[Fraction, ...]:
        """C^{-1} applied to Dynkin labels."""
        labels = _as_rational_labels(weight)
        _check_rank(self, labels)
        scaled = self.scaled_cartan_inv
        return tuple(
            sum((int(scaled[i, j]) * labels[j] for j in range(self.l)), Fraction(0)) / self.n
            for i in range(self.l)
        )

    def from_root_coordinates(self, coords: Sequence[int]) -> Weight:
        vector = np.asarray(coords, dtype=np.int64)
        return Weight(tuple(int(v) for v in self.cartan @ vector))


def inner_product(
    rs: RootSystem,
    a: Weight | RationalVector,
    b: Weight | RationalVector,
) -> Fraction:
    """Exact a^T C^{-1} b on Dynkin-label vectors."""
    left = _as_rational_labels(a)
    right = _as_rational_labels(b)
    _check_rank(rs, left)
    _check_rank(rs, right)
    scaled = rs.scaled_cartan_inv
    total = Fraction(0)
    for i, a_i in enumerate(left):
        if a_i == 0:
            continue
        for j, b_j in enumerate(right):
            total += a_i * int(scaled[i, j]) * b_j
    return total / rs.n


def casimir(rs: RootSystem, lam: Weight) -> Fraction:
    """c_lambda = <lambda+rho, lambda+rho> - <rho, rho>."""
    _check_rank(rs, lam.labels)
    if not lam.is_dominant():
        raise ValueError(f"casimir requires a dominant weight, got {lam}")
    shifted = lam + rs.rho
    return inner_product(rs, shifted, shifted) - inner_product(rs, rs.rho, rs.rho)


def level_k_weights(rs: RootSystem, k: int) -> list[Weight]:
    """D_k: dominant weights with label sum <= k, lexicographic."""
    if k < 0:
        raise ValueError(f"level must be >= 0, got k={k}")
    return [Weight(labels) for labels in _bounded_compositions(rs.l, k)]


def _bounded_compositions(length: int, total: int) -> Iterator[tuple[int, ...]]:
    if length == 0:
        yield ()
        return
    for first in range(total + 1):
        for rest in _bounded_compositions(length - 1, total - first):
            yield (first,) + rest


def epsilon_coordinates(labels: Sequence[int]) -> list[int]:
    """gl_n coordinates a_i = sum_{j >= i} labels_j, normalized so a_{n-1} = 0."""
    coords = [0] * (len(labels) + 1)
    running = 0
    for index in range(len(labels) - 1, -1, -1):
        running += int(labels[index])
        coords[index] = running
    return coords


def from_epsilon_coordinates(coords: Sequence[int]) -> tuple[int, ...]:
    return tuple(int(coords[j]) - int(coords[j + 1]) for j in range(len(coords) - 1))


def _as_rational_labels(value: Weight | RationalVector) -> tuple[Fraction, ...]:
    raw = value.labels if isinstance(value, Weight) else tuple(value)
    return tuple(Fraction(v) for v in raw)


def _check_rank(rs: RootSystem, labels: Sequence[object]) -> None:
    if len(labels) != rs.l:
        raise ValueError(f"expected a vector of length l={rs.l}, got length {len(labels)}")


def _check_same_rank(a: Sequence[int], b: Sequence[int]) -> None:
    if len(a) != len(b):
        raise ValueError(f"weight rank mismatch: {len(a)} != {len(b)}")


__all__ = [
    "RootSystem",
    "Weight",
    "casimir",
    "epsilon_coordinates",
    "from_epsilon_coordinates",
    "inner_product",
    "level_k_weights",
]
