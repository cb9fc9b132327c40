"""SU(2) theta functions in the half-normalized polarization.

    theta_{m,k'}(z)       = sum_p exp(pi i tau (m + k'p)^2 / k' + 2 pi i (m + k'p) z)
    theta^(1/2)_{m,k'}(z) = the same sum with (-1)^p inserted

z is the coroot coordinate of v = z alpha-check.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from functools import cached_property

import numpy as np

from domain.abelian.series import (
    MAX_RADIUS,
    LatticeThetaSeries,
    first_derivative,
    relative_residual,
    second_derivative,
)
from domain.common import DEFAULT_TOL, EllipticModulus
from domain.protocol import ThetaFamily


def su2_series(
    k_prime: int,
    m: int,
    tau: EllipticModulus,
    family: ThetaFamily = ThetaFamily.INTEGRAL,
    *,
    coefficient: complex = 1.0,
) -> LatticeThetaSeries:
    if k_prime < 1:
        raise ValueError(f"level must be >= 1, got k'={k_prime}")
    return LatticeThetaSeries(
        quad=np.array([[tau.tau / k_prime]]),
        base=np.array([float(m)]),
        generator=np.array([[float(k_prime)]]),
        characteristic=np.array([0.5]) if ThetaFamily(family) is ThetaFamily.HALF else None,
        coefficient=coefficient,
    )


@dataclass(frozen=True, eq=False)
class SU2Theta:
    k_prime: int
    m: int
    tau: EllipticModulus
    family: ThetaFamily = ThetaFamily.INTEGRAL
    tol: float = DEFAULT_TOL
    radius: int | None = None
    radius_cap: int = MAX_RADIUS

    def __post_init__(self) -> None:
        if self.k_prime < 1:
            raise ValueError(f"level must be >= 1, got k'={self.k_prime}")
        if not 0 <= self.m < self.k_prime:
            raise ValueError(f"label m={self.m} outside 0..{self.k_prime - 1}")
        if not self.tol > 0.0:
            raise ValueError(f"tol must be > 0, got {self.tol}")
        if self.radius_cap < 1:
            raise ValueError(f"radius_cap must be >= 1, got {self.radius_cap}")
        object.__setattr__(self, "family", ThetaFamily(self.family))

    @cached_property
    def series(self) -> LatticeThetaSeries:
        return su2_series(self.k_prime, self.m, self.tau, self.family)

    def with_tau(self, tau: complex) -> SU2Theta:
        return SU2Theta(
            k_prime=self.k_prime,
            m=self.m,
            tau=EllipticModulus(tau),
            family=self.family,
            tol=self.tol,
            radius=self.radius,
            radius_cap=self.radius_cap,
        )

    def with_label(self, m: int) -> SU2Theta:
        return SU2Theta(
            k_prime=self.k_prime,
            m=m % self.k_prime,
            tau=self.tau,
            family=self.family,
            tol=self.tol,
            radius=self.radius,
            radius_cap=self.radius_cap,
        )

    def __call__(self, z: complex) -> complex:
        return su2_theta_eval(self, z)


def su2_theta_eval_certified(theta: SU2Theta, z: complex) -> tuple[complex, float, int]:
    return theta.series.evaluate_certified(
        np.array([complex(z)]), tol=theta.tol, radius=theta.radius, cap=theta.radius_cap
    )


def su2_theta_eval(theta: SU2Theta, z: complex) -> complex:
    return su2_theta_eval_certified(theta, z)[0]


def su2_automorphy_factor(k_prime: int, tau: EllipticModulus, z: complex) -> complex:
    """theta(z + tau) = factor * theta(z) for the integral family."""
    return complex(np.exp(-2j * np.pi * k_prime * z - 1j * np.pi * k_prime * tau.tau))


def su2_quasi_periodicity_residual(theta: SU2Theta, z: complex) -> float:
    """Defect of the tau-shift law. The half family picks up an extra sign -1."""
    sign = -1.0 if theta.family is ThetaFamily.HALF else 1.0
    expected = sign * su2_automorphy_factor(theta.k_prime, theta.tau, z) * su2_theta_eval(theta, z)
    return relative_residual(su2_theta_eval(theta, z + theta.tau.tau), expected)


def su2_reflection_residual(theta: SU2Theta, z: complex) -> float:
    """theta_{m,k'}(-z) = theta_{k'-m,k'}(z) for the integral family."""
    if theta.family is not ThetaFamily.INTEGRAL:
        raise ValueError("the reflection law is stated for the integral family")
    reflected = theta.with_label(theta.k_prime - theta.m)
    return relative_residual(su2_theta_eval(theta, -z), su2_theta_eval(reflected, z))


def su2_half_shift_residual(theta: SU2Theta, z: complex) -> float:
    """theta^(1/2)_{m,k'}(z) = exp(-i pi m / k') theta_{m,k'}(z + 1/(2k'))."""
    integral = replace(theta, family=ThetaFamily.INTEGRAL)
    half = replace(theta, family=ThetaFamily.HALF)
    phase = np.exp(-1j * np.pi * theta.m / theta.k_prime)
    return relative_residual(su2_theta_eval(half, z), phase * su2_theta_eval(integral, z + 0.5 / theta.k_prime))


def su2_heat_residual(theta: SU2Theta, z: complex, step: float = 1e-4) -> float:
    """Relative defect of d theta / d tau = (1 / (4 pi i k')) d^2 theta / dz^2."""
    radius = su2_theta_eval_certified(theta, z)[2] + 2
    fixed = SU2Theta(
        theta.k_prime, theta.m, theta.tau, theta.family, theta.tol, radius, max(theta.radius_cap, radius)
    )
    lhs = first_derivative(lambda s: su2_theta_eval(fixed.with_tau(theta.tau.tau + s), z), step)
    curvature = second_derivative(lambda s: su2_theta_eval(fixed, z + s), step)
    return relative_residual(lhs, curvature / (4j * np.pi * theta.k_prime))


__all__ = [
    "SU2Theta",
    "su2_automorphy_factor",
    "su2_half_shift_residual",
    "su2_heat_residual",
    "su2_quasi_periodicity_residual",
    "su2_reflection_residual",
    "su2_series",
    "su2_theta_eval",
    "su2_theta_eval_certified",
]
