"""Lattice theta series with certified truncation.

Every theta function in the package is a finite signed combination of series

    sum_p  coefficient * exp(pi i u^T Q u + 2 pi i u.z + 2 pi i p.c),   u = base + L p,

over p in Z^l, with Q complex symmetric and Im Q positive definite. Two truncations
are offered: a box in p with an absolute Gaussian tail bound (point evaluation), and
an ellipsoid centered at the stationary point of |term| with a tail bound relative to
the Gaussian envelope (Fourier data for quadrature).
"""

from __future__ import annotations

from collections.abc import Callable, Iterable
from dataclasses import dataclass
from functools import cached_property, lru_cache
from math import exp, gamma, log, pi, sqrt
from typing import Final

import numpy as np

from domain.common import DEFAULT_TOL
from domain.errors import ResourceLimitError

MAX_RADIUS: Final[int] = 64
MAX_BLOCK_ENTRIES: Final[int] = 2_000_000
MAX_LOCAL_TERMS: Final[int] = 5_000_000
_LOG_HUGE: Final[float] = 700.0


@dataclass(frozen=True)
class LocalTerms:
    """Fourier data of a series on the real slice z = x + w, x real.

    The coefficient of exp(2 pi i u.x) is values * exp(log_envelope).
    """

    frequencies: np.ndarray
    values: np.ndarray
    log_envelope: float


@dataclass(frozen=True, eq=False)
class LatticeThetaSeries:
    quad: np.ndarray
    base: np.ndarray
    generator: np.ndarray
    characteristic: np.ndarray | None = None
    coefficient: complex = 1.0

    def __post_init__(self) -> None:
        quad = np.atleast_2d(np.asarray(self.quad, dtype=np.complex128))
        base = np.atleast_1d(np.asarray(self.base, dtype=np.float64))
        generator = np.atleast_2d(np.asarray(self.generator, dtype=np.float64))
        rank = base.shape[0]
        if quad.shape != (rank, rank) or generator.shape != (rank, rank):
            raise ValueError(
                f"shape mismatch: quad {quad.shape}, generator {generator.shape}, base ({rank},)"
            )
        if not np.allclose(quad, quad.T, rtol=0.0, atol=1e-12 * max(1.0, np.abs(quad).max())):
            raise ValueError("quadratic form must be symmetric")
        try:
            np.linalg.cholesky(quad.imag)
        except np.linalg.LinAlgError as exc:
            raise ValueError("imaginary part of the quadratic form must be positive definite") from exc
        if abs(np.linalg.det(generator)) < 1e-12:
            raise ValueError("lattice generator must be nonsingular")
        characteristic = (
            None
            if self.characteristic is None
            else np.atleast_1d(np.asarray(self.characteristic, dtype=np.float64))
        )
        if characteristic is not None and characteristic.shape != (rank,):
            raise ValueError(f"characteristic must have length {rank}")
        for name, value in (("quad", quad), ("base", base), ("generator", generator)):
            value.setflags(write=False)
            object.__setattr__(self, name, value)
        object.__setattr__(self, "characteristic", characteristic)
        object.__setattr__(self, "coefficient", complex(self.coefficient))

    @property
    def rank(self) -> int:
        return self.base.shape[0]

    @cached_property
    def imag_quad(self) -> np.ndarray:
        return self.quad.imag

    @cached_property
    def lambda_min(self) -> float:
        return float(np.linalg.eigvalsh(self.imag_quad).min())

    @cached_property
    def sigma_min(self) -> float:
        return float(np.linalg.svd(self.generator, compute_uv=False).min())

    @cached_property
    def base_norm(self) -> float:
        return float(np.linalg.norm(self.base))

    def scaled(self, factor: complex) -> LatticeThetaSeries:
        return LatticeThetaSeries(
            quad=self.quad,
            base=self.base,
            generator=self.generator,
            characteristic=self.characteristic,
            coefficient=self.coefficient * factor,
        )

    def frequencies(self, p: np.ndarray) -> np.ndarray:
        return self.base + p @ self.generator.T

    def _log_terms(self, p: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        u = self.frequencies(p)
        exponent = 1j * pi * np.einsum("pi,ij,pj->p", u, self.quad, u)
        if self.characteristic is not None:
            exponent = exponent + 2j * pi * (p @ self.characteristic)
        return u, exponent

    def tail_bound(self, radius: int, imag_norm: float) -> float:
        """Bound on the terms with max-norm |p| > radius at any z with |Im z| <= imag_norm."""
        lam = self.lambda_min
        peak = imag_norm / lam
        total = 0.0
        previous = None
        for r in range(radius + 1, radius + 10_000):
            rho = self.sigma_min * r - self.base_norm
            if rho <= peak:
                log_term = pi * imag_norm**2 / lam
            else:
                log_term = -pi * lam * rho**2 + 2.0 * pi * rho * imag_norm
            count = (2 * r + 1) ** self.rank - (2 * r - 1) ** self.rank
            log_term += log(count)
            if log_term > _LOG_HUGE:
                return float("inf")
            term = exp(log_term)
            total += term
            if rho > peak and previous is not None and previous > 0.0:
                ratio = term / previous
                if ratio < 0.5:
                    total += term * ratio / (1.0 - ratio)
                    return abs(self.coefficient) * total
            previous = term
        return float("inf")

    def radius_for(self, imag_norm: float, tol: float, cap: int = MAX_RADIUS) -> int:
        for radius in range(1, cap + 1):
            if self.tail_bound(radius, imag_norm) < tol:
                return radius
        raise ResourceLimitError(
            f"theta truncation needs radius > {cap} for tol={tol:g} at |Im z|={imag_norm:.3g}"
        )

    def evaluate_many(
        self,
        points: np.ndarray,
        *,
        tol: float = DEFAULT_TOL,
        radius: int | None = None,
        cap: int = MAX_RADIUS,
    ) -> tuple[np.ndarray, float, int]:
        """Values at each row of points, the certified tail bound and the radius used."""
        points = np.atleast_2d(np.asarray(points, dtype=np.complex128))
        if points.shape[1] != self.rank:
            raise ValueError(f"expected points of length {self.rank}, got {points.shape[1]}")
        imag_norm = float(np.linalg.norm(points.imag, axis=1).max()) if len(points) else 0.0
        if radius is None:
            radius = self.radius_for(imag_norm, tol, cap)
        tail = self.tail_bound(radius, imag_norm)

        p = box_points(self.rank, radius)
        u, exponent = self._log_terms(p)
        block = max(1, MAX_BLOCK_ENTRIES // len(p))
        values = np.empty(len(points), dtype=np.complex128)
        for start in range(0, len(points), block):
            chunk = points[start : start + block]
            phases = exponent[None, :] + 2j * pi * (chunk @ u.T)
            values[start : start + block] = np.exp(phases).sum(axis=1)
        return self.coefficient * values, tail, radius

    def evaluate_certified(
        self,
        z: np.ndarray,
        *,
        tol: float = DEFAULT_TOL,
        radius: int | None = None,
        cap: int = MAX_RADIUS,
    ) -> tuple[complex, float, int]:
        values, tail, used = self.evaluate_many(np.atleast_1d(z)[None, :], tol=tol, radius=radius, cap=cap)
        return complex(values[0]), tail, used

    def __call__(self, z: np.ndarray) -> complex:
        return self.evaluate_certified(z)[0]

    @cached_property
    def _radius_cache(self) -> dict[float, float]:
        return {}

    def ellipsoid_radius(self, tol: float) -> float:
        """Smallest R whose exterior terms sum to < tol relative to the envelope."""
        cached = self._radius_cache.get(tol)
        if cached is None:
            cached = self._radius_cache[tol] = self._search_ellipsoid_radius(tol)
        return cached

    def _search_ellipsoid_radius(self, tol: float) -> float:
        gram = self._p_gram
        det = float(np.linalg.det(gram))
        half_diagonal = 0.5 * sqrt(float(np.abs(gram).sum()))
        volume = pi ** (self.rank / 2) / gamma(self.rank / 2 + 1)
        radius = 0.5
        while radius < 100.0:
            bound = 0.0
            for j in range(200):
                shell = radius + j
                count = volume * (shell + 1.0 + half_diagonal) ** self.rank / sqrt(det)
                bound += count * exp(-pi * shell * shell)
                if j > 2 and count * exp(-pi * shell * shell) < 1e-300:
                    break
            if bound < tol:
                return radius
            radius += 0.125
        raise ResourceLimitError(f"no ellipsoid radius reaches tol={tol:g}")

    @cached_property
    def _p_gram(self) -> np.ndarray:
        return self.generator.T @ self.imag_quad @ self.generator

    def local_terms(self, w: np.ndarray, *, tol: float = DEFAULT_TOL) -> LocalTerms:
        """Terms within the tol-ellipsoid around the peak of |term| on the slice z = x + w."""
        w = np.atleast_1d(np.asarray(w, dtype=np.complex128))
        center = -np.linalg.solve(self.imag_quad, w.imag)
        log_envelope = float(pi * center @ self.imag_quad @ center)
        p_center = np.linalg.solve(self.generator, center - self.base)

        gram = self._p_gram
        radius = self.ellipsoid_radius(tol)
        half_widths = radius * np.sqrt(np.diag(np.linalg.inv(gram)))
        lows = np.floor(p_center - half_widths).astype(np.int64)
        highs = np.ceil(p_center + half_widths).astype(np.int64)
        if int(np.prod(highs - lows + 1)) > MAX_LOCAL_TERMS:
            raise ResourceLimitError(f"local ellipsoid holds more than {MAX_LOCAL_TERMS} terms")
        axes = [np.arange(lo, hi + 1, dtype=np.int64) for lo, hi in zip(lows, highs)]
        p = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, self.rank)
        offsets = p - p_center
        inside = np.einsum("pi,ij,pj->p", offsets, gram, offsets) <= radius * radius
        p = p[inside]

        u, exponent = self._log_terms(p)
        exponent = exponent + 2j * pi * (u @ w) - log_envelope
        return LocalTerms(
            frequencies=u,
            values=self.coefficient * np.exp(exponent),
            log_envelope=log_envelope,
        )


@dataclass(frozen=True, eq=False)
class SeriesCombination:
    """Finite sum of lattice theta series sharing one quadratic form."""

    components: tuple[LatticeThetaSeries, ...]
    label: str = ""

    def __post_init__(self) -> None:
        components = tuple(self.components)
        if not components:
            raise ValueError("a series combination needs at least one component")
        quad = components[0].quad
        for component in components[1:]:
            if component.rank != components[0].rank or not np.allclose(component.quad, quad):
                raise ValueError("components of a series combination must share the quadratic form")
        object.__setattr__(self, "components", components)

    @property
    def rank(self) -> int:
        return self.components[0].rank

    @property
    def quad(self) -> np.ndarray:
        return self.components[0].quad

    def scaled(self, factor: complex) -> SeriesCombination:
        return SeriesCombination(
            tuple(component.scaled(factor) for component in self.components),
            label=self.label,
        )

    def evaluate_many(
        self,
        points: np.ndarray,
        *,
        tol: float = DEFAULT_TOL,
        radius: int | None = None,
        cap: int = MAX_RADIUS,
    ) -> tuple[np.ndarray, float, int]:
        share = tol / len(self.components)
        total: np.ndarray | None = None
        tail = 0.0
        used = 0
        for component in self.components:
            values, component_tail, component_radius = component.evaluate_many(
                points, tol=share, radius=radius, cap=cap
            )
            total = values if total is None else total + values
            tail += component_tail
            used = max(used, component_radius)
        assert total is not None
        return total, tail, used

    def evaluate_certified(
        self,
        z: np.ndarray,
        *,
        tol: float = DEFAULT_TOL,
        radius: int | None = None,
        cap: int = MAX_RADIUS,
    ) -> tuple[complex, float, int]:
        values, tail, used = self.evaluate_many(np.atleast_1d(z)[None, :], tol=tol, radius=radius, cap=cap)
        return complex(values[0]), tail, used

    def __call__(self, z: np.ndarray) -> complex:
        return self.evaluate_certified(z)[0]

    def local_terms(self, w: np.ndarray, *, tol: float = DEFAULT_TOL) -> LocalTerms:
        parts = [component.local_terms(w, tol=tol) for component in self.components]
        envelope = parts[0].log_envelope
        return LocalTerms(
            frequencies=np.concatenate([part.frequencies for part in parts]),
            values=np.concatenate([part.values for part in parts]),
            log_envelope=envelope,
        )


ThetaSeries = LatticeThetaSeries | SeriesCombination


def as_combination(series: ThetaSeries, label: str = "") -> SeriesCombination:
    if isinstance(series, SeriesCombination):
        return series
    return SeriesCombination((series,), label=label)


def combine(parts: Iterable[ThetaSeries], label: str = "") -> SeriesCombination:
    components: list[LatticeThetaSeries] = []
    for part in parts:
        components.extend(as_combination(part).components)
    return SeriesCombination(tuple(components), label=label)


@lru_cache(maxsize=256)
def _box_points(rank: int, radius: int) -> np.ndarray:
    axis = np.arange(-radius, radius + 1, dtype=np.int64)
    grid = np.stack(np.meshgrid(*([axis] * rank), indexing="ij"), axis=-1).reshape(-1, rank)
    grid.setflags(write=False)
    return grid


def box_points(rank: int, radius: int) -> np.ndarray:
    """All p in Z^rank with max-norm <= radius."""
    if radius < 0:
        raise ValueError(f"radius must be >= 0, got {radius}")
    return _box_points(rank, radius)


def first_derivative(g: Callable[[float], complex], step: float) -> complex:
    """Five-point central difference of g at 0."""
    return (-g(2 * step) + 8 * g(step) - 8 * g(-step) + g(-2 * step)) / (12 * step)


def second_derivative(g: Callable[[float], complex], step: float) -> complex:
    """Five-point central second difference of g at 0."""
    return (-g(2 * step) + 16 * g(step) - 30 * g(0.0) + 16 * g(-step) - g(-2 * step)) / (
        12 * step * step
    )


def laplacian_form(
    f: Callable[[np.ndarray], complex],
    z: np.ndarray,
    form: np.ndarray,
    step: float,
) -> complex:
    """sum_ab form_ab d_a d_b f at z, through second derivatives along eigenvectors of form."""
    z = np.asarray(z, dtype=np.complex128)
    eigenvalues, eigenvectors = np.linalg.eigh(np.asarray(form, dtype=np.float64))
    total = 0.0 + 0.0j
    for value, direction in zip(eigenvalues, eigenvectors.T):
        if value == 0.0:
            continue
        total += value * second_derivative(lambda s: f(z + s * direction), step)
    return total


def relative_residual(lhs: complex, rhs: complex, floor_value: float = 1e-300) -> float:
    scale = max(abs(lhs), abs(rhs), floor_value)
    return abs(lhs - rhs) / scale


def integral_frequencies(frequencies: np.ndarray) -> np.ndarray:
    rounded = np.rint(frequencies)
    if not np.allclose(rounded, frequencies, atol=1e-9):
        raise ValueError("series frequencies are not integral")
    return rounded.astype(np.int64)


__all__ = [
    "LatticeThetaSeries",
    "LocalTerms",
    "MAX_RADIUS",
    "SeriesCombination",
    "ThetaSeries",
    "as_combination",
    "box_points",
    "combine",
    "first_derivative",
    "integral_frequencies",
    "laplacian_form",
    "relative_residual",
    "second_derivative",
]
