"""Registry of the named property checks run by the check suite."""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass, replace
from enum import Enum
from math import comb

import numpy as np

from domain.common import random_points
from domain.config import RunConfig
from domain.cst import (
    CSTImage,
    ClassFunctionSeries,
    PsiDistribution,
    diagram_check_coefficients,
    diagram_check_values,
)
from domain.errors import CheckNotApplicableError
from domain.gram import fundamental_domain_independence
from domain.nonabelian import (
    NATheta,
    looijenga_dim_check,
    na_heat_residual,
    picard_invariant_check,
    quasi_periodicity_residual,
    weyl_symmetry_residual,
)
from domain.periods import canonical_basis, completable_check, elementary_divisors
from domain.protocol import Symmetry, ThetaFamily
from domain.rootsys import RootSystem, Weight, level_k_weights, weyl_group
from domain.su2 import (
    SU2Theta,
    su2_automorphy_residual,
    su2_descent_residual,
    su2_dim_decomposition,
    su2_half_shift_residual,
    su2_heat_residual,
    su2_orbifold_dimension_check,
    su2_product_isomorphism_check,
    su2_psi_basis,
    su2_quasi_periodicity_residual,
    su2_reflection_residual,
)

RESIDUAL_POINTS = 20
DIAGRAM_POINTS = 10
MAX_LOOIJENGA_N = 4


class Scope(str, Enum):
    """Which rank a check applies to."""

    HIGHER = "higher"
    SU2 = "su2"
    ANY = "any"


@dataclass(frozen=True)
class CheckDescriptor:
    """A named measurement and the bound it must satisfy.

    With expect_above the measurement must exceed the threshold; negative controls use it.
    """

    name: str
    scope: Scope
    measure: Callable[[RunConfig], float]
    threshold: float
    expect_above: bool = False
    detuned: bool = False

    def applies_to(self, config: RunConfig) -> bool:
        if self.scope is Scope.ANY:
            return True
        return (config.n == 2) == (self.scope is Scope.SU2)

    def passes(self, value: float) -> bool:
        if self.expect_above:
            return value > self.threshold
        return value <= self.threshold


_REGISTRY: dict[str, CheckDescriptor] = {}


def register(descriptor: CheckDescriptor) -> None:
    """Register one check descriptor."""
    key = descriptor.name.lower()
    if key in _REGISTRY:
        raise ValueError(f"Duplicate check registration for name={key}")
    _REGISTRY[key] = descriptor


def get_all() -> list[CheckDescriptor]:
    """Return all registered checks in deterministic order."""
    return [_REGISTRY[key] for key in sorted(_REGISTRY)]


def get(name: str) -> CheckDescriptor:
    key = name.lower()
    try:
        return _REGISTRY[key]
    except KeyError as exc:
        available = ", ".join(sorted(_REGISTRY))
        raise KeyError(f"No check registered for {name}. Available: {available}") from exc


def _points(config: RunConfig, rank: int, count: int) -> list[np.ndarray]:
    rng = np.random.default_rng(config.seed)
    return random_points(rng, count=count, rank=rank, tau=config.tau, imag_scale=0.25)


def _descent_t(config: RunConfig) -> float:
    base = 2.0 / (2 * config.k + 4) if config.n == 2 else 1.0 / config.level_shifted
    return base + config.t_detune


def _verlinde(config: RunConfig) -> float:
    rs = RootSystem(config.n)
    return float(abs(len(level_k_weights(rs, config.k)) - comb(config.n + config.k - 1, config.k)))


def _picard(config: RunConfig) -> float:
    report = picard_invariant_check(RootSystem(config.n))
    expected = 4 if config.n == 2 else 1
    return float(report.order != expected)


def _periods(config: RunConfig) -> float:
    data = canonical_basis(config.n)
    divisors_ok = elementary_divisors(config.n) == (1,) * (config.n - 2) + (config.n,)
    return float(not (divisors_ok and completable_check(config.n, data.A)))


def _minus_theta(config: RunConfig, gamma: Weight) -> NATheta:
    rs = RootSystem(config.n)
    return NATheta(
        rs, gamma + rs.rho, config.level_shifted, config.modulus, Symmetry.MINUS, radius_cap=config.radius_cap
    )


def _quasi_periodicity(config: RunConfig) -> float:
    rs = RootSystem(config.n)
    worst = 0.0
    for index, v in enumerate(_points(config, rs.l, RESIDUAL_POINTS)):
        q = np.zeros(rs.l, dtype=np.int64)
        q[index % rs.l] = 1
        for gamma in level_k_weights(rs, config.k):
            theta = _minus_theta(config, gamma)
            worst = max(
                worst,
                quasi_periodicity_residual(theta, v, q),
                quasi_periodicity_residual(theta, v, q, imaginary=False),
            )
    return worst


def _weyl_symmetry(config: RunConfig) -> float:
    rs = RootSystem(config.n)
    group = weyl_group(rs)
    gamma = level_k_weights(rs, config.k)[-1]
    theta = _minus_theta(config, gamma)
    return max(
        weyl_symmetry_residual(theta, v, group[index % len(group)])
        for index, v in enumerate(_points(config, rs.l, RESIDUAL_POINTS))
    )


def _heat(config: RunConfig) -> float:
    rs = RootSystem(config.n)
    theta = _minus_theta(config, level_k_weights(rs, config.k)[0])
    return max(na_heat_residual(theta, v) for v in _points(config, rs.l, RESIDUAL_POINTS))


def _sample_class_function(rs: RootSystem) -> ClassFunctionSeries:
    weights = level_k_weights(rs, 2)
    return ClassFunctionSeries(rs, {lam: 1.0 / (1 + index) for index, lam in enumerate(weights)})


def _diagram_values(config: RunConfig) -> float:
    rs = RootSystem(config.n)
    f = _sample_class_function(rs)
    return diagram_check_values(f, config.modulus, 1.0 / config.level_shifted, _points(config, rs.l, DIAGRAM_POINTS))


def _diagram_coefficients(config: RunConfig) -> float:
    rs = RootSystem(config.n)
    return diagram_check_coefficients(_sample_class_function(rs), config.modulus, 1.0 / config.level_shifted)


def _closed_form_routes(config: RunConfig) -> float:
    rs = RootSystem(config.n)
    t = 1.0 / config.level_shifted
    worst = 0.0
    for gamma in level_k_weights(rs, config.k):
        psi = PsiDistribution(rs, gamma, config.k)
        closed = CSTImage(psi, config.modulus, t, closed_form=True)
        truncated = CSTImage(psi, config.modulus, t, tol=1e-12)
        for v in _points(config, rs.l, DIAGRAM_POINTS):
            a, b = closed(v), truncated(v)
            worst = max(worst, abs(a - b) / max(abs(a), 1e-300))
    return worst


def _descent(config: RunConfig) -> float:
    report = fundamental_domain_independence(
        RootSystem(config.n), config.k, config.modulus, t=_descent_t(config), seed=config.seed
    )
    return report.worst


def _looijenga(config: RunConfig) -> float:
    if config.n > MAX_LOOIJENGA_N:
        raise CheckNotApplicableError(
            f"rank spans are only sampled for n <= {MAX_LOOIJENGA_N}, got n={config.n}"
        )
    report = looijenga_dim_check(RootSystem(config.n), config.n, tau=config.modulus, seed=config.seed)
    return float(not report.matches or report.dim_minus != 1)


def _su2_thetas(config: RunConfig) -> list[SU2Theta]:
    k_prime = 2 * config.k + 4
    return [SU2Theta(k_prime, m, config.modulus, radius_cap=config.radius_cap) for m in range(k_prime)]


def _su2_quasi_periodicity(config: RunConfig) -> float:
    points = _points(config, 1, RESIDUAL_POINTS)
    worst = 0.0
    for theta in _su2_thetas(config):
        for family in ThetaFamily:
            variant = replace(theta, family=family)
            worst = max(worst, max(su2_quasi_periodicity_residual(variant, complex(v[0])) for v in points))
    return worst


def _su2_reflection(config: RunConfig) -> float:
    points = _points(config, 1, RESIDUAL_POINTS)
    return max(
        max(su2_reflection_residual(theta, complex(v[0])), su2_half_shift_residual(theta, complex(v[0])))
        for theta in _su2_thetas(config)
        for v in points
    )


def _su2_heat(config: RunConfig) -> float:
    theta = _su2_thetas(config)[1]
    return max(su2_heat_residual(theta, complex(v[0])) for v in _points(config, 1, RESIDUAL_POINTS))


def _su2_dimensions(config: RunConfig) -> float:
    mismatches = 0
    for k_prime in range(1, 11):
        k, odd = divmod(k_prime, 2)
        expected = (k + 1, k) if odd else (k + 1, k - 1)
        mismatches += su2_dim_decomposition(k_prime).as_tuple() != expected
    plus, minus = su2_orbifold_dimension_check(config.k)
    mismatches += (plus, minus) != (config.k + 1, config.k + 1)
    return float(mismatches)


def _su2_descent(config: RunConfig) -> float:
    t = _descent_t(config)
    return max(su2_descent_residual(psi, config.modulus, t, seed=config.seed) for psi in su2_psi_basis(config.k))


def _su2_half_family_control(config: RunConfig) -> float:
    return min(
        su2_automorphy_residual(psi, config.modulus, seed=config.seed)
        for psi in su2_psi_basis(config.k, ThetaFamily.HALF)
    )


def _su2_product(config: RunConfig) -> float:
    if config.k < 1:
        raise CheckNotApplicableError("the product map needs k >= 1")
    return su2_product_isomorphism_check(config.k, config.modulus, seed=config.seed)


def _register_defaults() -> None:
    if _REGISTRY:
        return

    for descriptor in (
        CheckDescriptor("verlinde_count", Scope.ANY, _verlinde, 0.0),
        CheckDescriptor("picard_invariant_order", Scope.ANY, _picard, 0.0),
        CheckDescriptor("periods_invariants", Scope.ANY, _periods, 0.0),
        CheckDescriptor("quasi_periodicity", Scope.HIGHER, _quasi_periodicity, 1e-9),
        CheckDescriptor("weyl_antisymmetry", Scope.HIGHER, _weyl_symmetry, 1e-9),
        CheckDescriptor("heat_equation", Scope.HIGHER, _heat, 1e-5),
        CheckDescriptor("diagram_values", Scope.HIGHER, _diagram_values, 1e-9),
        CheckDescriptor("diagram_coefficients", Scope.HIGHER, _diagram_coefficients, 1e-10),
        CheckDescriptor("cst_closed_form", Scope.HIGHER, _closed_form_routes, 1e-8),
        CheckDescriptor("descent", Scope.HIGHER, _descent, 1e-9, detuned=True),
        CheckDescriptor("looijenga_dimensions", Scope.HIGHER, _looijenga, 0.0),
        CheckDescriptor("su2_quasi_periodicity", Scope.SU2, _su2_quasi_periodicity, 1e-9),
        CheckDescriptor("su2_reflection", Scope.SU2, _su2_reflection, 1e-10),
        CheckDescriptor("su2_heat_equation", Scope.SU2, _su2_heat, 1e-5),
        CheckDescriptor("su2_dimensions", Scope.SU2, _su2_dimensions, 0.0),
        CheckDescriptor("su2_descent", Scope.SU2, _su2_descent, 1e-9, detuned=True),
        CheckDescriptor("su2_half_family_control", Scope.SU2, _su2_half_family_control, 1e-2, expect_above=True),
        CheckDescriptor("su2_product_map", Scope.SU2, _su2_product, 1e-7),
    ):
        register(descriptor)


_register_defaults()

__all__ = [
    "CheckDescriptor",
    "Scope",
    "get",
    "get_all",
    "register",
]
