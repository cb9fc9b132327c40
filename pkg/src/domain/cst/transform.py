"""The coherent state transform on class functions and on the distributions psi_{gamma,k}."""

from __future__ import annotations

from collections.abc import Mapping, Sequence
from dataclasses import dataclass
from fractions import Fraction
from math import ceil, exp, gamma, log, pi, sqrt
from typing import Final

import numpy as np

from domain.abelian.series import LatticeThetaSeries, SeriesCombination
from domain.common import DEFAULT_TOL, EllipticModulus, TorusPoint, as_point
from domain.cst.characters import character_eval
from domain.errors import ResourceLimitError, SingularLocusError, SingularWeightError
from domain.nonabelian.theta import minus_series, sigma_eval
from domain.rootsys import (
    RootSystem,
    Weight,
    affine_orbit,
    alcove_reduce,
    casimir,
    inner_product,
    signed_orbit,
)

SIGMA_THRESHOLD: Final[float] = 1e-12
LEVEL_RTOL: Final[float] = 1e-12
MAX_CUTOFF_RADIUS: Final[float] = 200.0

PointLike = TorusPoint | Sequence[complex] | np.ndarray | complex


@dataclass(frozen=True, eq=False)
class ClassFunctionSeries:
    """f = sum a_lam chi_lam over finitely many dominant lam."""

    rs: RootSystem
    terms: Mapping[Weight, complex]

    def __post_init__(self) -> None:
        terms = {}
        for lam, coefficient in self.terms.items():
            if lam.rank != self.rs.l or not lam.is_dominant():
                raise ValueError(f"class function terms need dominant weights of rank {self.rs.l}, got {lam}")
            terms[lam] = complex(coefficient)
        object.__setattr__(self, "terms", dict(sorted(terms.items())))

    def __len__(self) -> int:
        return len(self.terms)

    def __add__(self, other: ClassFunctionSeries) -> ClassFunctionSeries:
        if other.rs != self.rs:
            raise ValueError("cannot add class functions of different groups")
        merged = dict(self.terms)
        for lam, coefficient in other.terms.items():
            merged[lam] = merged.get(lam, 0.0) + coefficient
        return ClassFunctionSeries(self.rs, merged)

    def scaled(self, factor: complex) -> ClassFunctionSeries:
        return ClassFunctionSeries(self.rs, {lam: factor * a for lam, a in self.terms.items()})

    def evaluate(self, v: PointLike) -> complex:
        z = as_point(v)
        return complex(sum(a * character_eval(self.rs, lam, z) for lam, a in self.terms.items()))


@dataclass(frozen=True)
class PsiDistribution:
    """psi_{gamma,k} = sum of eps_lam chi_lam over lam + rho in the (W x (k+n) Lambda_R)-orbit of gamma + rho."""

    rs: RootSystem
    gamma: Weight
    k: int

    def __post_init__(self) -> None:
        if self.k < 0:
            raise ValueError(f"level must be >= 0, got k={self.k}")
        if self.gamma.rank != self.rs.l or not self.gamma.is_dominant() or sum(self.gamma.labels) > self.k:
            raise ValueError(f"gamma={self.gamma} is not in D_{self.k}")

    @property
    def level_shifted(self) -> int:
        return self.k + self.rs.n

    @property
    def base(self) -> Weight:
        return self.gamma + self.rs.rho

    @property
    def min_cutoff(self) -> Fraction:
        return inner_product(self.rs, self.base, self.base)

    def pairing(self, mu: Weight) -> int:
        """The pairing with chi_mu: eps_mu when mu + rho lies in the orbit, else 0."""
        try:
            witness = alcove_reduce(self.rs, mu + self.rs.rho, self.level_shifted)
        except SingularWeightError:
            return 0
        return witness.sign if witness.base == self.base else 0


@dataclass(frozen=True, eq=False)
class CSTImage:
    source: ClassFunctionSeries | PsiDistribution
    tau: EllipticModulus
    t: float
    closed_form: bool = False
    tol: float = DEFAULT_TOL

    def __post_init__(self) -> None:
        if not self.t > 0.0:
            raise ValueError(f"t must be > 0, got t={self.t}")
        if self.closed_form:
            if not isinstance(self.source, PsiDistribution):
                raise ValueError("the closed form exists only for psi distributions")
            if abs(self.t * self.source.level_shifted - 1.0) > LEVEL_RTOL:
                raise ValueError(
                    f"closed form needs t = 1/(k+n) = 1/{self.source.level_shifted}, got t={self.t}"
                )

    def evaluate(self, v: PointLike) -> complex:
        z = as_point(v)
        if isinstance(self.source, ClassFunctionSeries):
            return _damped_sum(self.source, self.tau, self.t, z)
        if self.closed_form:
            return cst_psi_closed_form(self.source, self.tau, z)
        cutoff = certified_cutoff(self.source, self.tau, self.t, z, self.tol)
        return _damped_sum(psi_truncate(self.source, cutoff), self.tau, self.t, z)

    def __call__(self, v: PointLike) -> complex:
        return self.evaluate(v)


def damping_factor(rs: RootSystem, lam: Weight, tau: EllipticModulus, t: float) -> complex:
    """exp(i pi tau t c_lam)."""
    return complex(np.exp(1j * np.pi * tau.tau * t * float(casimir(rs, lam))))


def cst_apply(f: ClassFunctionSeries, tau: EllipticModulus, t: float) -> CSTImage:
    return CSTImage(source=f, tau=tau, t=t)


def _damped_sum(f: ClassFunctionSeries, tau: EllipticModulus, t: float, z: np.ndarray) -> complex:
    total = 0.0 + 0.0j
    for lam, coefficient in f.terms.items():
        total += coefficient * damping_factor(f.rs, lam, tau, t) * character_eval(f.rs, lam, z)
    return total


def psi_truncate(psi: PsiDistribution, cutoff: Fraction | int | float) -> ClassFunctionSeries:
    """Terms of psi with <lam+rho, lam+rho> <= cutoff."""
    cutoff = Fraction(cutoff)
    if cutoff < psi.min_cutoff:
        raise ValueError(f"cutoff {cutoff} is below <gamma+rho, gamma+rho> = {psi.min_cutoff}")
    orbit = affine_orbit(psi.rs, psi.gamma, psi.k, cutoff)
    return ClassFunctionSeries(psi.rs, {lam: float(sign) for lam, sign in orbit})


def certified_cutoff(
    psi: PsiDistribution,
    tau: EllipticModulus,
    t: float,
    v: PointLike,
    tol: float = DEFAULT_TOL,
) -> Fraction:
    """A cutoff whose dropped terms of C_t(psi) contribute < tol at v.

    Uses |chi_lam(v)| <= dim(lam) exp(2 pi R |Im v|_C) and dim(lam) <= prod (sqrt(2) R / ht alpha),
    with R = |lam + rho| and the lattice-point count of the weight lattice in a ball of radius R.
    """
    rs = psi.rs
    z = as_point(v)
    imag = z.imag
    imag_norm = sqrt(max(float(imag @ rs.cartan @ imag), 0.0))
    rho_norm = float(inner_product(rs, rs.rho, rs.rho))
    heights = [sum(root) for root in rs.positive_roots]
    damping = pi * tau.tau2 * t
    volume = pi ** (rs.l / 2) / gamma(rs.l / 2 + 1)
    half_diagonal = 0.5 * sqrt(float(np.abs(rs.cartan_inv_float).sum()))

    def log_shell(radius: float) -> float:
        count = volume * (radius + half_diagonal) ** rs.l * sqrt(rs.n)
        log_dim = sum(log(max(sqrt(2.0) * radius / h, 1.0)) for h in heights)
        return log(count) + log_dim + 2.0 * pi * radius * imag_norm

    radius = sqrt(float(psi.min_cutoff))
    while radius < MAX_CUTOFF_RADIUS:
        bound = 0.0
        for j in range(400):
            inner = radius + j
            term = exp(min(log_shell(inner + 1.0) - damping * (inner * inner - rho_norm), 700.0))
            bound += term
            if j > 3 and term < 1e-300:
                break
        if bound < tol:
            return Fraction(ceil(radius * radius))
        radius += 0.5
    raise ResourceLimitError(f"no psi cutoff below radius {MAX_CUTOFF_RADIUS} reaches tol={tol:g}")


def cst_psi_closed_form(psi: PsiDistribution, tau: EllipticModulus, v: PointLike) -> complex:
    """exp(-i pi tau |rho|^2 / (k+n)) theta^-_{gamma+rho, k+n}(v) / sigma(v)."""
    z = as_point(v)
    sigma = sigma_eval(psi.rs, z)
    if abs(sigma) < SIGMA_THRESHOLD:
        raise SingularLocusError(f"sigma vanishes at v={z.tolist()} (|sigma|={abs(sigma):.3g})")
    rho_norm = float(inner_product(psi.rs, psi.rs.rho, psi.rs.rho))
    prefactor = np.exp(-1j * np.pi * tau.tau * rho_norm / psi.level_shifted)
    theta = minus_series(psi.rs, psi.base, psi.level_shifted, tau)(z)
    return complex(prefactor * theta / sigma)


def psi_image_series(psi: PsiDistribution, tau: EllipticModulus, t: float) -> SeriesCombination:
    """sigma * C_t(psi) as a signed lattice series over the whole affine orbit, for any t > 0."""
    if not t > 0.0:
        raise ValueError(f"t must be > 0, got t={t}")
    rs = psi.rs
    rho_norm = float(inner_product(rs, rs.rho, rs.rho))
    prefactor = complex(np.exp(-1j * np.pi * tau.tau * t * rho_norm))
    images, signs = signed_orbit(rs, psi.base)
    components = tuple(
        LatticeThetaSeries(
            quad=t * tau.tau * rs.cartan_inv_float,
            base=image.astype(np.float64),
            generator=psi.level_shifted * rs.cartan.astype(np.float64),
            coefficient=float(sign) * prefactor,
        )
        for image, sign in zip(images, signs)
    )
    return SeriesCombination(components, label=f"psi_{psi.gamma}_{psi.k}_t{t:g}")


__all__ = [
    "CSTImage",
    "ClassFunctionSeries",
    "PsiDistribution",
    "certified_cutoff",
    "cst_apply",
    "cst_psi_closed_form",
    "damping_factor",
    "psi_image_series",
    "psi_truncate",
]
