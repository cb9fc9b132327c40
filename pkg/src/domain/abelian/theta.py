"""Level-k theta functions on a polarized torus and the abelian CST."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from domain.abelian.distributions import bs_distribution_theta0, cst_mode_factor
from domain.abelian.series import (
    LatticeThetaSeries,
    box_points,
    first_derivative,
    laplacian_form,
    relative_residual,
)
from domain.abelian.torus import PolarizedTorus, ThetaLabel
from domain.common import DEFAULT_TOL, TorusPoint, as_point

CST_LEVEL_RTOL = 1e-12
CST_MODE_RTOL = 1e-10
CST_MODE_RADIUS = 3


@dataclass(frozen=True, eq=False)
class ThetaEvaluator:
    torus: PolarizedTorus
    label: ThetaLabel
    tol: float = DEFAULT_TOL
    radius: int | None = None

    def __post_init__(self) -> None:
        if not self.tol > 0.0:
            raise ValueError(f"tol must be > 0, got {self.tol}")
        if self.radius is not None and self.radius < 0:
            raise ValueError(f"radius must be >= 0, got {self.radius}")
        self.label.check(self.torus)

    @cached_property
    def series(self) -> LatticeThetaSeries:
        return self.torus.theta_series(self.label)

    def with_omega(self, omega: np.ndarray) -> ThetaEvaluator:
        torus = PolarizedTorus(l=self.torus.l, omega=omega, delta=self.torus.delta, k=self.torus.k)
        return ThetaEvaluator(torus=torus, label=self.label, tol=self.tol, radius=self.radius)

    def __call__(self, z: np.ndarray) -> complex:
        return theta_eval(self, z)


def theta_eval_certified(
    ev: ThetaEvaluator,
    z: TorusPoint | Sequence[complex] | np.ndarray | complex,
) -> tuple[complex, float, int]:
    """Value, certified tail bound and the truncation radius used."""
    return ev.series.evaluate_certified(as_point(z), tol=ev.tol, radius=ev.radius)


def theta_eval(ev: ThetaEvaluator, z: TorusPoint | Sequence[complex] | np.ndarray | complex) -> complex:
    return theta_eval_certified(ev, z)[0]


def abelian_cst(
    l: int,
    k: int,
    delta: Sequence[int],
    m: Sequence[int],
    *,
    omega: np.ndarray,
    t: float | None = None,
    tol: float = DEFAULT_TOL,
) -> ThetaEvaluator:
    """The CST image of theta0_m at t = 1/k, which is the level-k theta function theta_m.

    The damped Fourier modes of theta0_m are compared with the terms of theta_m on a
    box of lattice points before the evaluator is returned.
    """
    if t is None:
        t = 1.0 / k
    if abs(t * k - 1.0) > CST_LEVEL_RTOL:
        raise ValueError(f"the abelian CST yields theta functions only at t = 1/k; got t={t}, k={k}")
    distribution = bs_distribution_theta0(l, k, delta, m)
    torus = PolarizedTorus(l=l, omega=omega, delta=tuple(delta), k=k)
    ev = ThetaEvaluator(torus=torus, label=ThetaLabel(tuple(m)), tol=tol)
    series = ev.series
    if not np.array_equal(series.generator, np.diag(np.asarray(distribution.moduli, dtype=np.float64))):
        raise ArithmeticError("CST image does not have the period lattice of the level-k theta series")
    for q in series.frequencies(box_points(l, CST_MODE_RADIUS)):
        mode = tuple(int(v) for v in np.rint(q))
        if not distribution.contains(mode):
            raise ArithmeticError(f"theta series mode {mode} is not in the support of theta0_{tuple(m)}")
        expected = series.coefficient * np.exp(1j * np.pi * (q @ series.quad @ q))
        damped = cst_mode_factor(mode, torus.omega, t)
        if abs(damped - expected) > CST_MODE_RTOL * abs(expected):
            raise ArithmeticError(f"CST mode factor at q={mode} does not match the level-k theta series")
    return ev


def abelian_heat_residual(
    ev: ThetaEvaluator,
    z: np.ndarray,
    direction: np.ndarray,
    step: float = 1e-4,
) -> float:
    """Relative defect of d theta / d Omega_D = -(i / (4 pi k)) sum D_ab d_a d_b theta."""
    z = as_point(z)
    direction = np.atleast_2d(np.asarray(direction, dtype=np.float64))
    if not np.allclose(direction, direction.T):
        raise ValueError("heat direction must be symmetric")
    radius = theta_eval_certified(ev, z)[2] + 2
    fixed = ThetaEvaluator(torus=ev.torus, label=ev.label, tol=ev.tol, radius=radius)

    def along_omega(s: float) -> complex:
        return theta_eval(fixed.with_omega(ev.torus.omega + s * direction), z)

    lhs = first_derivative(along_omega, step)
    rhs = -1j / (4.0 * np.pi * ev.torus.k) * laplacian_form(lambda p: theta_eval(fixed, p), z, direction, step)
    return relative_residual(lhs, rhs)


__all__ = [
    "ThetaEvaluator",
    "abelian_cst",
    "abelian_heat_residual",
    "theta_eval",
    "theta_eval_certified",
]
