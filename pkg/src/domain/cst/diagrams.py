"""Commutativity of the CST with restriction to the torus, on sampled values and on coefficients."""

from __future__ import annotations

from collections.abc import Sequence
from math import sqrt

import numpy as np

from domain.abelian.distributions import cst_mode_factor
from domain.common import EllipticModulus
from domain.cst.characters import character_eval
from domain.cst.transform import ClassFunctionSeries, damping_factor
from domain.nonabelian.theta import sigma_eval
from domain.rootsys import inner_product, signed_orbit


def _restricted_modes(f: ClassFunctionSeries) -> list[tuple[np.ndarray, complex, object, int]]:
    """Fourier modes w(lam+rho) of sigma f / sqrt|W|, with their coefficients."""
    scale = 1.0 / sqrt(f.rs.weyl_order)
    modes = []
    for lam, coefficient in f.terms.items():
        images, signs = signed_orbit(f.rs, lam + f.rs.rho)
        for image, sign in zip(images, signs):
            modes.append((image, coefficient * float(sign) * scale, lam, int(sign)))
    return modes


def diagram_check_values(
    f: ClassFunctionSeries,
    tau: EllipticModulus,
    t: float,
    points: Sequence[np.ndarray],
) -> float:
    """max |phi_C(C_t f) - C_t^ab(phi f)| over the sample points."""
    rs = f.rs
    rho_norm = float(inner_product(rs, rs.rho, rs.rho))
    shift = np.exp(1j * np.pi * tau.tau * t * rho_norm)
    omega = tau.tau * rs.cartan_inv_float
    modes = [
        (image, coefficient * cst_mode_factor(image, omega, t))
        for image, coefficient, _, _ in _restricted_modes(f)
    ]

    worst = 0.0
    for point in points:
        z = np.asarray(point, dtype=np.complex128)
        transformed = sum(
            a * damping_factor(rs, lam, tau, t) * character_eval(rs, lam, z) for lam, a in f.terms.items()
        )
        left = shift * sigma_eval(rs, z) / sqrt(rs.weyl_order) * transformed
        right = sum(c * np.exp(2j * np.pi * (image @ z)) for image, c in modes)
        worst = max(worst, abs(left - right))
    return float(worst)


def diagram_check_coefficients(f: ClassFunctionSeries, tau: EllipticModulus, t: float) -> float:
    """Same diagram mode by mode: exp(i pi tau t |rho|^2) damping(lam) against the mode factor."""
    rs = f.rs
    rho_norm = float(inner_product(rs, rs.rho, rs.rho))
    shift = np.exp(1j * np.pi * tau.tau * t * rho_norm)
    omega = tau.tau * rs.cartan_inv_float
    worst = 0.0
    for image, coefficient, lam, _ in _restricted_modes(f):
        left = shift * coefficient * damping_factor(rs, lam, tau, t)
        right = coefficient * cst_mode_factor(image, omega, t)
        worst = max(worst, abs(left - right) / max(abs(right), 1e-300))
    return float(worst)


__all__ = ["diagram_check_coefficients", "diagram_check_values"]
