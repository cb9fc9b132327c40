"""Genus-one non-abelian theta functions for SU(n) on h / (coroot lattice + tau coroot lattice).

Points are coroot coordinates z with v = sum z_j alpha_j-check; a weight with Dynkin
labels u pairs with v as u.z. The plain level-k series with label gamma is

    theta_{gamma,k}(v) = sum_{u in gamma + k Lambda_R} exp(pi i tau <u,u> / k + 2 pi i u(v)).
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from domain.abelian.series import (
    MAX_RADIUS,
    LatticeThetaSeries,
    SeriesCombination,
    first_derivative,
    laplacian_form,
    relative_residual,
)
from domain.common import DEFAULT_TOL, EllipticModulus, TorusPoint, as_point
from domain.errors import SingularLocusError
from domain.protocol import Symmetry
from domain.rootsys import (
    RootSystem,
    Weight,
    WeylElement,
    level_k_weights,
    on_affine_wall,
    signed_orbit,
)

SINGULAR_THRESHOLD = 1e-12

PointLike = TorusPoint | Sequence[complex] | np.ndarray | complex


def plain_series(
    rs: RootSystem,
    beta: Weight | Sequence[int],
    level: int,
    tau: EllipticModulus,
    *,
    coefficient: complex = 1.0,
) -> LatticeThetaSeries:
    if level < 1:
        raise ValueError(f"theta level must be >= 1, got {level}")
    labels = beta.labels if isinstance(beta, Weight) else tuple(beta)
    return LatticeThetaSeries(
        quad=tau.tau * rs.cartan_inv_float / level,
        base=np.asarray(labels, dtype=np.float64),
        generator=level * rs.cartan.astype(np.float64),
        coefficient=coefficient,
    )


def symmetrized_series(
    rs: RootSystem,
    beta: Weight,
    level: int,
    tau: EllipticModulus,
    *,
    antisymmetric: bool,
) -> SeriesCombination:
    """sum_w s(w) theta_{w beta, level} with s = sign (antisymmetric) or 1."""
    images, signs = signed_orbit(rs, beta)
    components = tuple(
        plain_series(rs, tuple(int(v) for v in image), level, tau, coefficient=float(sign) if antisymmetric else 1.0)
        for image, sign in zip(images, signs)
    )
    kind = "minus" if antisymmetric else "plus"
    return SeriesCombination(components, label=f"theta{kind}_{beta}_{level}")


def minus_series(rs: RootSystem, mu: Weight, level: int, tau: EllipticModulus) -> SeriesCombination:
    return symmetrized_series(rs, mu, level, tau, antisymmetric=True)


@dataclass(frozen=True, eq=False)
class NATheta:
    rs: RootSystem
    gamma: Weight
    k: int
    tau: EllipticModulus
    symmetry: Symmetry = Symmetry.PLAIN
    tol: float = DEFAULT_TOL
    radius: int | None = None
    radius_cap: int = MAX_RADIUS

    def __post_init__(self) -> None:
        if self.gamma.rank != self.rs.l:
            raise ValueError(f"gamma={self.gamma} must have {self.rs.l} labels")
        object.__setattr__(self, "symmetry", Symmetry(self.symmetry))
        if self.symmetry is Symmetry.HATPLUS:
            if self.k < 0 or not self.gamma.is_dominant() or sum(self.gamma.labels) > self.k:
                raise ValueError(f"gamma={self.gamma} is not in D_{self.k}")
        elif self.k < 1:
            raise ValueError(f"level must be >= 1, got k={self.k}")
        if not self.tol > 0.0:
            raise ValueError(f"tol must be > 0, got {self.tol}")
        if self.radius_cap < 1:
            raise ValueError(f"radius_cap must be >= 1, got {self.radius_cap}")

    @property
    def is_zero(self) -> bool:
        """Anti-symmetrization kills labels on a wall of the level-k affine Weyl action."""
        return self.symmetry is Symmetry.MINUS and on_affine_wall(self.rs, self.gamma, self.k)

    @cached_property
    def series(self) -> SeriesCombination:
        if self.symmetry is Symmetry.PLAIN:
            return SeriesCombination((plain_series(self.rs, self.gamma, self.k, self.tau),))
        if self.symmetry is Symmetry.PLUS:
            return symmetrized_series(self.rs, self.gamma, self.k, self.tau, antisymmetric=False)
        if self.symmetry is Symmetry.MINUS:
            return minus_series(self.rs, self.gamma, self.k, self.tau)
        raise ValueError("the hat frame is a quotient, not a lattice series")

    def with_tau(self, tau: complex) -> NATheta:
        return NATheta(
            rs=self.rs,
            gamma=self.gamma,
            k=self.k,
            tau=EllipticModulus(tau),
            symmetry=self.symmetry,
            tol=self.tol,
            radius=self.radius,
            radius_cap=self.radius_cap,
        )

    def __call__(self, v: np.ndarray) -> complex:
        return natheta_eval(self, v)


def natheta_eval_certified(t: NATheta, v: PointLike) -> tuple[complex, float, int]:
    z = as_point(v)
    if z.shape[0] != t.rs.l:
        raise ValueError(f"expected a point with {t.rs.l} coordinates, got {z.shape[0]}")
    if t.symmetry is Symmetry.HATPLUS:
        return hat_frame_eval(t.rs, t.gamma, t.k, t.tau, z, tol=t.tol), 0.0, 0
    if t.is_zero:
        return 0.0 + 0.0j, 0.0, 0
    return t.series.evaluate_certified(z, tol=t.tol, radius=t.radius, cap=t.radius_cap)


def natheta_eval(t: NATheta, v: PointLike) -> complex:
    return natheta_eval_certified(t, v)[0]


def sigma_eval(rs: RootSystem, v: PointLike) -> complex:
    """Weyl denominator sum_w eps(w) exp(2 pi i w(rho)(v))."""
    z = as_point(v)
    images, signs = signed_orbit(rs, rs.rho)
    return complex(np.sum(signs * np.exp(2j * np.pi * (images @ z))))


def hat_frame_eval(
    rs: RootSystem,
    gamma: Weight,
    k: int,
    tau: EllipticModulus,
    v: PointLike,
    *,
    tol: float = DEFAULT_TOL,
) -> complex:
    """theta^-_{gamma+rho, k+n}(v) / theta^-_{rho, n}(v)."""
    if not gamma.is_dominant() or sum(gamma.labels) > k:
        raise ValueError(f"gamma={gamma} is not in D_{k}")
    z = as_point(v)
    denominator = minus_series(rs, rs.rho, rs.n, tau).evaluate_certified(z, tol=tol)[0]
    if abs(denominator) < SINGULAR_THRESHOLD:
        raise SingularLocusError(
            f"theta^-_(rho,{rs.n}) vanishes at v={z.tolist()} (|value|={abs(denominator):.3g})"
        )
    numerator = minus_series(rs, gamma + rs.rho, k + rs.n, tau).evaluate_certified(z, tol=tol)[0]
    return numerator / denominator


def minus_frame(rs: RootSystem, k: int, tau: EllipticModulus) -> list[tuple[Weight, SeriesCombination]]:
    """theta^-_{gamma+rho, k+n} for gamma in D_k, in D_k order."""
    return [
        (gamma, minus_series(rs, gamma + rs.rho, k + rs.n, tau)) for gamma in level_k_weights(rs, k)
    ]


def na_automorphy_factor(
    rs: RootSystem,
    k: int,
    tau: EllipticModulus,
    q: Sequence[int],
    v: PointLike,
) -> complex:
    """Factor e with theta(v + tau sum q_j alpha_j-check) = e * theta(v) at level k."""
    z = as_point(v)
    q_array = np.asarray(q, dtype=np.int64)
    beta = rs.cartan @ q_array
    norm = int(q_array @ beta)
    return complex(np.exp(-2j * np.pi * k * (beta @ z) - 1j * np.pi * k * tau.tau * norm))


def quasi_periodicity_residual(t: NATheta, v: PointLike, q: Sequence[int], *, imaginary: bool = True) -> float:
    """Relative defect of the automorphy law along tau q (imaginary) or along q (real)."""
    z = as_point(v)
    q_array = np.asarray(q, dtype=np.float64)
    if imaginary:
        shifted = natheta_eval(t, z + t.tau.tau * q_array)
        expected = na_automorphy_factor(t.rs, t.k, t.tau, q, z) * natheta_eval(t, z)
    else:
        shifted = natheta_eval(t, z + q_array)
        expected = natheta_eval(t, z)
    return relative_residual(shifted, expected)


def weyl_symmetry_residual(t: NATheta, v: PointLike, w: WeylElement) -> float:
    """Defect of theta(w v) = s(w) theta(v), s = 1 for plus and hatplus, eps(w) for minus."""
    if t.symmetry is Symmetry.PLAIN:
        raise ValueError("plain theta series carry no Weyl symmetry")
    z = as_point(v)
    sign = w.sign if t.symmetry is Symmetry.MINUS else 1
    return relative_residual(natheta_eval(t, w.act_on_point(z)), sign * natheta_eval(t, z))


def na_heat_residual(t: NATheta, v: PointLike, step: float = 1e-4) -> float:
    """Relative defect of d theta / d tau = -(i / (4 pi k)) sum C^{ij} d_i d_j theta."""
    if t.symmetry is Symmetry.HATPLUS:
        raise ValueError("the heat equation applies to lattice series, not the hat frame")
    z = as_point(v)
    radius = natheta_eval_certified(t, z)[2] + 2
    fixed = NATheta(
        rs=t.rs,
        gamma=t.gamma,
        k=t.k,
        tau=t.tau,
        symmetry=t.symmetry,
        tol=t.tol,
        radius=radius,
        radius_cap=max(t.radius_cap, radius),
    )
    lhs = first_derivative(lambda s: natheta_eval(fixed.with_tau(t.tau.tau + s), z), step)
    laplacian = laplacian_form(lambda p: natheta_eval(fixed, p), z, t.rs.cartan_inv_float, step)
    rhs = -1j / (4.0 * np.pi * t.k) * laplacian
    return relative_residual(lhs, rhs)


__all__ = [
    "NATheta",
    "hat_frame_eval",
    "minus_frame",
    "minus_series",
    "na_automorphy_factor",
    "na_heat_residual",
    "natheta_eval",
    "natheta_eval_certified",
    "plain_series",
    "quasi_periodicity_residual",
    "sigma_eval",
    "symmetrized_series",
    "weyl_symmetry_residual",
]
