"""Polarized abelian varieties in a canonical basis and their theta labels."""

from __future__ import annotations

from collections.abc import Mapping, Sequence
from dataclasses import dataclass
from itertools import product
from typing import Any

import numpy as np

from domain.abelian.series import LatticeThetaSeries


@dataclass(frozen=True, eq=False)
class PolarizedTorus:
    """C^l / (delta Z^l + Omega Z^l) at level k."""

    l: int
    omega: np.ndarray
    delta: tuple[int, ...]
    k: int

    def __post_init__(self) -> None:
        omega = np.atleast_2d(np.asarray(self.omega, dtype=np.complex128))
        delta = tuple(int(d) for d in self.delta)
        if self.l < 1:
            raise ValueError(f"l must be >= 1, got l={self.l}")
        if omega.shape != (self.l, self.l):
            raise ValueError(f"omega must be {self.l}x{self.l}, got shape {omega.shape}")
        if not np.allclose(omega, omega.T, rtol=0.0, atol=1e-12):
            raise ValueError("omega must be symmetric")
        try:
            np.linalg.cholesky(omega.imag)
        except np.linalg.LinAlgError as exc:
            raise ValueError("Im(omega) must be positive definite") from exc
        if len(delta) != self.l:
            raise ValueError(f"delta must have length {self.l}, got {delta}")
        if any(d <= 0 for d in delta):
            raise ValueError(f"delta entries must be > 0, got {delta}")
        if any(delta[i + 1] % delta[i] for i in range(self.l - 1)):
            raise ValueError(f"delta must satisfy d_i | d_(i+1), got {delta}")
        if self.k < 1:
            raise ValueError(f"level must be >= 1, got k={self.k}")
        omega.setflags(write=False)
        object.__setattr__(self, "omega", omega)
        object.__setattr__(self, "delta", delta)

    @classmethod
    def principal(cls, omega: np.ndarray, k: int) -> PolarizedTorus:
        omega = np.atleast_2d(np.asarray(omega, dtype=np.complex128))
        return cls(l=omega.shape[0], omega=omega, delta=(1,) * omega.shape[0], k=k)

    @property
    def label_moduli(self) -> tuple[int, ...]:
        return tuple(self.k * d for d in self.delta)

    @property
    def dimension(self) -> int:
        """delta_1 ... delta_l k^l, the number of independent level-k theta functions."""
        return int(np.prod(self.label_moduli))

    def labels(self) -> list[ThetaLabel]:
        ranges = [range(modulus) for modulus in self.label_moduli]
        return [ThetaLabel(tuple(m)) for m in product(*ranges)]

    def theta_series(self, label: ThetaLabel) -> LatticeThetaSeries:
        label.check(self)
        return LatticeThetaSeries(
            quad=self.omega / self.k,
            base=np.asarray(label.m, dtype=np.float64),
            generator=np.diag(np.asarray(self.label_moduli, dtype=np.float64)),
        )

    def lattice_shift(self, b: Sequence[int]) -> np.ndarray:
        """z-translation Omega delta b of the lattice vector b in the tau-directions."""
        return self.omega @ (np.asarray(self.delta) * np.asarray(b, dtype=np.float64))

    def as_json_dict(self) -> dict[str, Any]:
        return {
            "l": self.l,
            "omega": [[[float(v.real), float(v.imag)] for v in row] for row in self.omega],
            "delta": list(self.delta),
            "k": self.k,
        }

    @classmethod
    def from_json_dict(cls, raw: Mapping[str, Any]) -> PolarizedTorus:
        try:
            rows = raw["omega"]
            omega = np.asarray([[complex(re, im) for re, im in row] for row in rows])
            return cls(l=int(raw["l"]), omega=omega, delta=tuple(raw["delta"]), k=int(raw["k"]))
        except (KeyError, TypeError) as exc:
            raise ValueError(f"invalid torus descriptor: {exc}") from exc


@dataclass(frozen=True, order=True)
class ThetaLabel:
    m: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "m", tuple(int(v) for v in self.m))

    def check(self, torus: PolarizedTorus) -> None:
        if len(self.m) != torus.l:
            raise ValueError(f"label {self.m} must have length {torus.l}")
        for value, modulus in zip(self.m, torus.label_moduli):
            if not 0 <= value < modulus:
                raise ValueError(f"label {self.m} out of range for moduli {torus.label_moduli}")


def automorphy_factor(torus: PolarizedTorus, b: Sequence[int], z: np.ndarray) -> complex:
    """e(b, z) with theta(z + Omega delta b) = e(b, z) theta(z)."""
    shift = np.asarray(torus.delta) * np.asarray(b, dtype=np.float64)
    z = np.asarray(z, dtype=np.complex128)
    k = torus.k
    return complex(np.exp(-2j * np.pi * k * (shift @ z) - 1j * np.pi * k * (shift @ torus.omega @ shift)))


@dataclass(frozen=True, eq=False)
class CoordinateChange:
    """theta_m(z, Omega) = series(P z), with Omega~ = P Omega P^T."""

    torus: PolarizedTorus
    P: np.ndarray
    omega_tilde: np.ndarray

    @property
    def dual(self) -> np.ndarray:
        return np.linalg.inv(self.P.T.astype(np.float64))

    def map_point(self, z: np.ndarray) -> np.ndarray:
        return self.P @ np.asarray(z, dtype=np.complex128)

    def map_label(self, label: ThetaLabel) -> np.ndarray:
        return self.dual @ np.asarray(label.m, dtype=np.float64)

    def series(self, label: ThetaLabel) -> LatticeThetaSeries:
        label.check(self.torus)
        moduli = np.diag(np.asarray(self.torus.label_moduli, dtype=np.float64))
        return LatticeThetaSeries(
            quad=self.omega_tilde / self.torus.k,
            base=self.map_label(label),
            generator=self.dual @ moduli,
        )


def change_of_basis(torus: PolarizedTorus, P: np.ndarray) -> CoordinateChange:
    P = np.atleast_2d(np.asarray(P))
    if P.shape != (torus.l, torus.l):
        raise ValueError(f"P must be {torus.l}x{torus.l}, got shape {P.shape}")
    if not np.array_equal(P, np.rint(P)):
        raise ValueError("P must be an integer matrix")
    P = P.astype(np.int64)
    det = round(float(np.linalg.det(P)))
    if abs(det) != 1:
        raise ValueError(f"P must be unimodular, got det={det}")
    omega_tilde = P @ torus.omega @ P.T
    omega_tilde = 0.5 * (omega_tilde + omega_tilde.T)
    return CoordinateChange(torus=torus, P=P, omega_tilde=omega_tilde)


__all__ = [
    "CoordinateChange",
    "PolarizedTorus",
    "ThetaLabel",
    "automorphy_factor",
    "change_of_basis",
]
