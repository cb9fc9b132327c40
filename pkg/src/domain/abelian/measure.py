"""Averaged heat-kernel measures on period cells."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from math import log, pi, sqrt

import numpy as np

from domain.abelian.torus import PolarizedTorus
from domain.common import EllipticModulus
from domain.rootsys import RootSystem


@dataclass(frozen=True, eq=False)
class HeatMeasure:
    """nu(eta, xi) = normalization * exp(-(2 pi / t) (delta xi)^T gram (delta xi)).

    Coordinates are z = eta + Omega delta xi with gram = Im Omega. For a coroot cell
    v = x + tau s the same formula holds with gram = tau_2 C and delta = 1.
    """

    l: int
    t: float
    gram: np.ndarray
    delta: tuple[int, ...]

    def __post_init__(self) -> None:
        gram = np.atleast_2d(np.asarray(self.gram, dtype=np.float64))
        if gram.shape != (self.l, self.l):
            raise ValueError(f"gram must be {self.l}x{self.l}, got shape {gram.shape}")
        if not self.t > 0.0:
            raise ValueError(f"t must be > 0, got t={self.t}")
        try:
            np.linalg.cholesky(gram)
        except np.linalg.LinAlgError as exc:
            raise ValueError("measure gram must be positive definite") from exc
        gram.setflags(write=False)
        object.__setattr__(self, "gram", gram)
        object.__setattr__(self, "delta", tuple(int(d) for d in self.delta))

    @classmethod
    def for_torus(cls, torus: PolarizedTorus, t: float | None = None) -> HeatMeasure:
        return cls(
            l=torus.l,
            t=1.0 / torus.k if t is None else t,
            gram=torus.omega.imag,
            delta=torus.delta,
        )

    @classmethod
    def for_coroot_cell(cls, rs: RootSystem, tau: EllipticModulus, t: float) -> HeatMeasure:
        return cls(l=rs.l, t=t, gram=tau.tau2 * rs.cartan.astype(np.float64), delta=(1,) * rs.l)

    @property
    def normalization(self) -> float:
        return (2.0 / self.t) ** (self.l / 2) * sqrt(float(np.linalg.det(self.gram))) * float(
            np.prod(self.delta)
        )

    def log_value(self, xi: np.ndarray) -> float:
        scaled = np.asarray(self.delta, dtype=np.float64) * np.asarray(xi, dtype=np.float64)
        return log(self.normalization) - (2.0 * pi / self.t) * float(scaled @ self.gram @ scaled)

    def value(self, eta: Sequence[float], xi: Sequence[float]) -> float:
        del eta
        return float(np.exp(self.log_value(np.asarray(xi, dtype=np.float64))))

    def density(self, z: np.ndarray) -> float:
        """The same measure as a function of z, through delta xi = W Im z with W = gram^{-1}."""
        imag = np.asarray(z, dtype=np.complex128).imag
        weight = np.linalg.inv(self.gram)
        exponent = -(2.0 * pi / self.t) * float(imag @ weight @ imag)
        return self.normalization * float(np.exp(exponent))


def heat_measure_eval(hm: HeatMeasure, eta: Sequence[float], xi: Sequence[float]) -> float:
    return hm.value(eta, xi)


__all__ = ["HeatMeasure", "heat_measure_eval"]
