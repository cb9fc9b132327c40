"""Bohr-Sommerfeld distributions on the real torus and the abelian CST mode factors."""

from __future__ import annotations

from collections.abc import Mapping, Sequence
from dataclasses import dataclass
from itertools import product

import numpy as np

from domain.abelian.series import LatticeThetaSeries


@dataclass(frozen=True)
class BohrSommerfeldDistribution:
    """theta0_m(x) = sum_p exp(2 pi i (m + k delta p).x), stored by its Fourier support."""

    k: int
    delta: tuple[int, ...]
    m: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError(f"level must be >= 1, got k={self.k}")
        if len(self.m) != len(self.delta):
            raise ValueError(f"label {self.m} does not match delta {self.delta}")
        for value, modulus in zip(self.m, self.moduli):
            if not 0 <= value < modulus:
                raise ValueError(f"label {self.m} out of range for moduli {self.moduli}")

    @property
    def moduli(self) -> tuple[int, ...]:
        return tuple(self.k * d for d in self.delta)

    def contains(self, q: Sequence[int]) -> bool:
        """True when exp(2 pi i q.x) occurs in the series."""
        return all((int(qj) - mj) % modulus == 0 for qj, mj, modulus in zip(q, self.m, self.moduli))

    def pair(self, fourier: Mapping[tuple[int, ...], complex]) -> complex:
        """<theta0_m, f> for f = sum_q f_q exp(2 pi i q.x) given by finitely many f_q."""
        total = 0.0 + 0.0j
        for q, value in fourier.items():
            if self.contains(tuple(-int(v) for v in q)):
                total += value
        return total

    def cst_image(self, omega: np.ndarray, t: float) -> LatticeThetaSeries:
        """Each mode exp(2 pi i q.x) multiplied by cst_mode_factor(q, omega, t)."""
        omega = np.atleast_2d(np.asarray(omega, dtype=np.complex128))
        return LatticeThetaSeries(
            quad=t * omega,
            base=np.asarray(self.m, dtype=np.float64),
            generator=np.diag(np.asarray(self.moduli, dtype=np.float64)),
        )


def bs_distribution_theta0(
    l: int,
    k: int,
    delta: Sequence[int],
    m: Sequence[int],
) -> BohrSommerfeldDistribution:
    if len(delta) != l:
        raise ValueError(f"delta must have length {l}, got {tuple(delta)}")
    return BohrSommerfeldDistribution(k=k, delta=tuple(int(d) for d in delta), m=tuple(int(v) for v in m))


def cst_mode_factor(q: Sequence[int], omega: np.ndarray, t: float) -> complex:
    q = np.asarray(q, dtype=np.float64)
    omega = np.atleast_2d(np.asarray(omega, dtype=np.complex128))
    return complex(np.exp(1j * np.pi * t * (q @ omega @ q)))


def label_space(k: int, delta: Sequence[int]) -> list[tuple[int, ...]]:
    return [tuple(m) for m in product(*(range(k * d) for d in delta))]


def dirac_coefficients(k: int, delta: Sequence[int], m_prime: Sequence[int]) -> np.ndarray:
    """Coefficients of the point mass at delta^{-1} m'/k in the theta0_m basis."""
    delta_array = np.asarray(delta, dtype=np.float64)
    point = np.asarray(m_prime, dtype=np.float64) / (k * delta_array)
    labels = np.asarray(label_space(k, delta), dtype=np.float64)
    return np.exp(-2j * np.pi * (labels @ point))


def dirac_frame(k: int, delta: Sequence[int]) -> np.ndarray:
    """Rows are the normalized delta_{m'} in the orthonormal theta0_m basis."""
    labels = label_space(k, delta)
    matrix = np.asarray([dirac_coefficients(k, delta, m_prime) for m_prime in labels])
    return matrix / np.sqrt(len(labels))


__all__ = [
    "BohrSommerfeldDistribution",
    "bs_distribution_theta0",
    "cst_mode_factor",
    "dirac_coefficients",
    "dirac_frame",
    "label_space",
]
