"""Pointwise invariance of the Hall integrand under W and the lattice Lambda + tau Lambda."""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass
from math import pi

import numpy as np

from domain.abelian.measure import HeatMeasure
from domain.abelian.series import SeriesCombination
from domain.common import EllipticModulus, random_points
from domain.cst.transform import PsiDistribution, psi_image_series
from domain.rootsys import RootSystem, inner_product, level_k_weights, weyl_group


@dataclass(frozen=True)
class DescentReport:
    """Largest relative change of the integrand under each kind of move."""

    n: int
    k: int
    t: float
    samples: int
    real_shift: float
    tau_shift: float
    weyl: float

    @property
    def worst(self) -> float:
        return max(self.real_shift, self.tau_shift, self.weyl)

    def passes(self, tolerance: float) -> bool:
        return self.worst <= tolerance


class HallIntegrand:
    """|sigma C_t(psi)(v)|^2 exp(-2 t pi tau_2 |rho|^2) nu_t(v) for one psi."""

    def __init__(self, image: SeriesCombination, rs: RootSystem, tau: EllipticModulus, t: float) -> None:
        self.image = image
        self.tau = tau
        self.measure = HeatMeasure.for_coroot_cell(rs, tau, t)
        self.log_weight = -2.0 * t * pi * tau.tau2 * float(inner_product(rs, rs.rho, rs.rho))

    def __call__(self, v: np.ndarray) -> float:
        s = np.asarray(v, dtype=np.complex128).imag / self.tau.tau2
        value = self.image(v)
        return float(abs(value) ** 2 * np.exp(self.measure.log_value(s) + self.log_weight))


def _relative(before: float, after: float) -> float:
    return abs(after - before) / max(abs(before), 1e-300)


def fundamental_domain_independence(
    rs: RootSystem,
    k: int,
    tau: EllipticModulus,
    *,
    t: float | None = None,
    samples: int = 8,
    seed: int = 0,
    echo: Callable[[str], None] | None = None,
) -> DescentReport:
    """Compare the integrand at v and at v + lambda, v + tau mu and w(v) for every gamma in D_k.

    Lattice moves use random coroot vectors with entries in {-1, 0, 1}, at least one nonzero.
    Away from t = 1/(k+n) the tau moves no longer preserve the integrand.
    """
    t = 1.0 / (k + rs.n) if t is None else float(t)
    if not t > 0.0:
        raise ValueError(f"t must be > 0, got t={t}")
    if samples < 1:
        raise ValueError(f"samples must be >= 1, got {samples}")
    rng = np.random.default_rng(seed)
    group = weyl_group(rs)
    points = random_points(rng, count=samples, rank=rs.l, tau=tau.tau, imag_scale=0.25)

    def lattice_vector() -> np.ndarray:
        while True:
            q = rng.integers(-1, 2, size=rs.l)
            if np.any(q):
                return q.astype(np.float64)

    real_shift = tau_shift = weyl = 0.0
    for gamma in level_k_weights(rs, k):
        integrand = HallIntegrand(psi_image_series(PsiDistribution(rs, gamma, k), tau, t), rs, tau, t)
        for v in points:
            base = integrand(v)
            real_shift = max(real_shift, _relative(base, integrand(v + lattice_vector())))
            tau_shift = max(tau_shift, _relative(base, integrand(v + tau.tau * lattice_vector())))
            w = group[int(rng.integers(len(group)))]
            weyl = max(weyl, _relative(base, integrand(w.act_on_point(v))))

    report = DescentReport(
        n=rs.n,
        k=k,
        t=t,
        samples=samples,
        real_shift=real_shift,
        tau_shift=tau_shift,
        weyl=weyl,
    )
    if echo is not None:
        echo(
            f"descent n={rs.n} k={k} t={t:g} real_shift={real_shift:.3g} "
            f"tau_shift={tau_shift:.3g} weyl={weyl:.3g}"
        )
    return report


__all__ = ["DescentReport", "HallIntegrand", "fundamental_domain_independence"]
