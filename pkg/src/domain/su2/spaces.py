"""Invariant and anti-invariant SU(2) theta spaces, the psi distributions and their CST images."""

from __future__ import annotations

import time
from collections.abc import Callable
from dataclasses import dataclass
from math import exp, pi

import numpy as np

from domain.abelian.measure import HeatMeasure
from domain.abelian.series import LatticeThetaSeries, SeriesCombination, relative_residual
from domain.common import DEFAULT_TOL, EllipticModulus, random_points
from domain.errors import ConvergenceError
from domain.gram.frames import frame_gram, refined_gram
from domain.gram.quadrature import default_points, generic_offset
from domain.gram.report import GramReport
from domain.protocol import ThetaFamily
from domain.su2.theta import su2_automorphy_factor, su2_series

RHO_NORM = 0.5
WEYL_ORDER = 2
RANK_RTOL = 1e-8
MAX_CONDITION = 1e10

LabelCombination = dict[int, float]


@dataclass(frozen=True)
class SU2Decomposition:
    k_prime: int
    plus_basis: tuple[LabelCombination, ...]
    minus_basis: tuple[LabelCombination, ...]

    @property
    def dim_plus(self) -> int:
        return len(self.plus_basis)

    @property
    def dim_minus(self) -> int:
        return len(self.minus_basis)

    def as_tuple(self) -> tuple[int, int]:
        return self.dim_plus, self.dim_minus


def _combination(k_prime: int, m: int, sign: float) -> LabelCombination:
    partner = (k_prime - m) % k_prime
    if partner == m:
        return {m: 1.0}
    return {m: 1.0, partner: sign}


def su2_dim_decomposition(k_prime: int) -> SU2Decomposition:
    """Bases theta_m +/- theta_{k'-m} of the even and odd parts of the level-k' space."""
    if k_prime < 1:
        raise ValueError(f"level must be >= 1, got k'={k_prime}")
    half = k_prime // 2
    plus = tuple(_combination(k_prime, m, 1.0) for m in range(half + 1))
    minus = tuple(_combination(k_prime, m, -1.0) for m in range(1, (k_prime + 1) // 2))
    return SU2Decomposition(k_prime=k_prime, plus_basis=plus, minus_basis=minus)


def combination_series(
    k_prime: int,
    combination: LabelCombination,
    tau: EllipticModulus,
    family: ThetaFamily = ThetaFamily.INTEGRAL,
) -> SeriesCombination:
    return SeriesCombination(
        tuple(su2_series(k_prime, m, tau, family, coefficient=c) for m, c in sorted(combination.items())),
        label=f"su2_{k_prime}_{sorted(combination.items())}",
    )


def su2_numeric_rank(
    k_prime: int,
    tau: EllipticModulus,
    *,
    minus: bool,
    seed: int = 0,
) -> int:
    """Numeric rank of the declared basis sampled at random points."""
    decomposition = su2_dim_decomposition(k_prime)
    basis = decomposition.minus_basis if minus else decomposition.plus_basis
    if not basis:
        return 0
    rng = np.random.default_rng(seed)
    points = np.array(random_points(rng, count=3 * len(basis) + 4, rank=1, tau=tau.tau, imag_scale=0.25))
    columns = [combination_series(k_prime, c, tau).evaluate_many(points)[0] for c in basis]
    matrix = np.stack(columns, axis=1)
    matrix = matrix / np.abs(matrix).max(axis=1, keepdims=True)
    singular = np.linalg.svd(matrix, compute_uv=False)
    return int(np.sum(singular > RANK_RTOL * singular[0]))


@dataclass(frozen=True)
class SU2Psi:
    """psi_{m,k}: the distribution whose CST image at t = 2/k' is theta^-_{m+1,k'} / sigma."""

    k: int
    m: int
    family: ThetaFamily = ThetaFamily.INTEGRAL
    k_prime: int | None = None

    def __post_init__(self) -> None:
        if self.k < 0:
            raise ValueError(f"level must be >= 0, got k={self.k}")
        if not 0 <= self.m <= self.k:
            raise ValueError(f"label m={self.m} outside 0..{self.k}")
        k_prime = 2 * self.k + 4 if self.k_prime is None else self.k_prime
        if k_prime not in (2 * self.k + 3, 2 * self.k + 4):
            raise ValueError(f"k'={k_prime} must be 2k+4 or 2k+3 for k={self.k}")
        object.__setattr__(self, "k_prime", k_prime)
        object.__setattr__(self, "family", ThetaFamily(self.family))

    @property
    def is_orbifold(self) -> bool:
        return self.k_prime == 2 * self.k + 3

    @property
    def descent_t(self) -> float:
        return 2.0 / self.k_prime

    @property
    def frequency(self) -> int:
        return self.m + 1


def su2_psi_basis(k: int, family: ThetaFamily = ThetaFamily.INTEGRAL, *, orbifold: bool = False) -> list[SU2Psi]:
    k_prime = 2 * k + 3 if orbifold else 2 * k + 4
    return [SU2Psi(k=k, m=m, family=family, k_prime=k_prime) for m in range(k + 1)]


def su2_image_series(psi: SU2Psi, tau: EllipticModulus, t: float | None = None) -> SeriesCombination:
    """sigma * C_t(psi) as a signed series with frequencies +/-(m+1) + k'p and form t tau / 2."""
    t = psi.descent_t if t is None else float(t)
    if not t > 0.0:
        raise ValueError(f"t must be > 0, got t={t}")
    prefactor = complex(np.exp(-1j * pi * tau.tau * t * RHO_NORM))
    characteristic = np.array([0.5]) if psi.family is ThetaFamily.HALF else None
    components = []
    for sign in (1.0, -1.0):
        components.append(
            LatticeThetaSeries(
                quad=np.array([[t * tau.tau * 0.5]]),
                base=np.array([sign * psi.frequency]),
                generator=np.array([[float(psi.k_prime)]]),
                characteristic=characteristic,
                coefficient=sign * prefactor,
            )
        )
    return SeriesCombination(tuple(components), label=f"su2psi_{psi.m}_{psi.k}_{psi.family.value}")


def _integrand(image: SeriesCombination, measure: HeatMeasure, tau: EllipticModulus, t: float, z: complex) -> float:
    s = np.array([complex(z).imag / tau.tau2])
    value = image(np.array([complex(z)]))
    return float(abs(value) ** 2 * np.exp(measure.log_value(s) - 2.0 * t * pi * tau.tau2 * RHO_NORM))


def su2_measure(tau: EllipticModulus, t: float) -> HeatMeasure:
    return HeatMeasure(l=1, t=t, gram=np.array([[2.0 * tau.tau2]]), delta=(1,))


def su2_descent_residual(
    psi: SU2Psi,
    tau: EllipticModulus,
    t: float | None = None,
    *,
    samples: int = 8,
    seed: int = 0,
) -> float:
    """Largest relative change of |sigma C_t psi|^2 nu_t under z -> z + 1, z + tau and z -> -z."""
    t = psi.descent_t if t is None else float(t)
    image = su2_image_series(psi, tau, t)
    measure = su2_measure(tau, t)
    rng = np.random.default_rng(seed)
    worst = 0.0
    for point in random_points(rng, count=samples, rank=1, tau=tau.tau, imag_scale=0.25):
        z = complex(point[0])
        base = _integrand(image, measure, tau, t, z)
        for moved in (z + 1.0, z + tau.tau, z - tau.tau, -z):
            worst = max(worst, relative_residual(base, _integrand(image, measure, tau, t, moved)))
    return worst


def su2_automorphy_residual(
    psi: SU2Psi,
    tau: EllipticModulus,
    *,
    samples: int = 8,
    seed: int = 0,
) -> float:
    """Defect of image(z + tau) = exp(-2 pi i k' z - pi i k' tau) image(z), the holomorphic descent law."""
    image = su2_image_series(psi, tau)
    rng = np.random.default_rng(seed)
    worst = 0.0
    for point in random_points(rng, count=samples, rank=1, tau=tau.tau, imag_scale=0.25):
        z = complex(point[0])
        shifted = image(np.array([z + tau.tau]))
        expected = su2_automorphy_factor(psi.k_prime, tau, z) * image(np.array([z]))
        worst = max(worst, abs(shifted - expected) / max(abs(expected), 1e-300))
    return worst


def su2_gram(
    k: int,
    tau: EllipticModulus,
    *,
    N: int | None = None,
    family: ThetaFamily = ThetaFamily.INTEGRAL,
    k_prime: int | None = None,
    t: float | None = None,
    refine: bool = False,
    threads: int = 1,
    echo: Callable[[str], None] | None = None,
) -> GramReport:
    """Gram of sigma C_t(psi_m), m = 0..k, under exp(-2 t pi tau_2 |rho|^2) nu_t / |W|.

    With refine the matrix is recomputed on 1.5N points and ConvergenceError is raised
    when it moves by more than REFINEMENT_TOL.
    """
    started = time.perf_counter()
    N = default_points(1) if N is None else N
    basis = [SU2Psi(k=k, m=m, family=family, k_prime=k_prime) for m in range(k + 1)]
    t = basis[0].descent_t if t is None else float(t)
    frame = [su2_image_series(psi, tau, t) for psi in basis]
    measure = su2_measure(tau, t)

    def shift(s: np.ndarray) -> np.ndarray:
        return tau.tau * s

    scale = exp(-2.0 * t * pi * tau.tau2 * RHO_NORM) / WEYL_ORDER
    matrix, refinement_delta = refined_gram(
        lambda grid: frame_gram(frame, measure, shift, grid, scale=scale, threads=threads, echo=echo),
        1,
        N,
        generic_offset(1, N),
        refine,
    )
    report = GramReport(
        kind="su2",
        matrix=matrix,
        labels=tuple(str(psi.m) for psi in basis),
        N_used=N,
        seconds=time.perf_counter() - started,
        t=t,
        normalization=measure.normalization,
        refinement_delta=refinement_delta,
        parameters={
            "k": k,
            "k_prime": basis[0].k_prime,
            "family": ThetaFamily(family).value,
            "tau": [tau.tau.real, tau.tau.imag],
        },
    )
    if echo is not None:
        echo(
            f"gram kind=su2 k={k} k_prime={basis[0].k_prime} N={N} "
            f"seconds={report.seconds:.2f} max_offdiag={report.max_offdiag:.3g}"
        )
    return report


def su2_product_isomorphism_check(
    k: int,
    tau: EllipticModulus,
    *,
    samples: int | None = None,
    seed: int = 0,
    tol: float = DEFAULT_TOL,
) -> float:
    """Relative least-squares residual of theta^-_4 * (plus basis at level 2k) against the minus basis at 2k+4."""
    if k < 1:
        raise ValueError(f"the product map needs k >= 1, got k={k}")
    minus_basis = su2_dim_decomposition(2 * k + 4).minus_basis
    plus_basis = su2_dim_decomposition(2 * k).plus_basis
    generator = combination_series(4, su2_dim_decomposition(4).minus_basis[0], tau)
    count = 3 * len(minus_basis) + 4 if samples is None else samples
    rng = np.random.default_rng(seed)
    points = np.array(random_points(rng, count=count, rank=1, tau=tau.tau, imag_scale=0.25))

    targets = np.stack(
        [combination_series(2 * k + 4, c, tau).evaluate_many(points, tol=tol)[0] for c in minus_basis], axis=1
    )
    factor = generator.evaluate_many(points, tol=tol)[0]
    products = np.stack(
        [factor * combination_series(2 * k, c, tau).evaluate_many(points, tol=tol)[0] for c in plus_basis],
        axis=1,
    )
    row_scale = np.abs(targets).max(axis=1, keepdims=True)
    targets = targets / row_scale
    products = products / row_scale
    condition = float(np.linalg.cond(targets))
    if condition > MAX_CONDITION:
        raise ConvergenceError(f"minus basis samples are ill-conditioned (cond={condition:.3g})")

    worst = 0.0
    for column in products.T:
        coefficients, *_ = np.linalg.lstsq(targets, column, rcond=None)
        residual = np.linalg.norm(targets @ coefficients - column) / max(np.linalg.norm(column), 1e-300)
        worst = max(worst, float(residual))
    return worst


def su2_orbifold_dimension_check(k: int) -> tuple[int, int]:
    """(dim of the even part at level 2k, dim of the odd part at level 2k+3); both are k+1."""
    if k < 0:
        raise ValueError(f"level must be >= 0, got k={k}")
    plus = su2_dim_decomposition(2 * k).dim_plus if k > 0 else 1
    return plus, su2_dim_decomposition(2 * k + 3).dim_minus


__all__ = [
    "SU2Decomposition",
    "SU2Psi",
    "combination_series",
    "su2_automorphy_residual",
    "su2_descent_residual",
    "su2_dim_decomposition",
    "su2_gram",
    "su2_image_series",
    "su2_measure",
    "su2_numeric_rank",
    "su2_orbifold_dimension_check",
    "su2_product_isomorphism_check",
    "su2_psi_basis",
]
