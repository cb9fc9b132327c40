"""Gram matrices of theta frames by quadrature over the period cell.

Every frame here is a list of lattice series on a torus of rank l. A series is sampled
on the product grid (eta, xi) in [0,1)^(2l): for each xi node the Fourier terms that
matter on the slice z = eta + shift(xi) are bucketed modulo N and summed by one inverse
FFT. The Gaussian envelope of the slice and the square root of the measure are folded
in before the outer product, so no intermediate value overflows.
"""

from __future__ import annotations

import time
from collections.abc import Callable, Sequence
from concurrent.futures import ThreadPoolExecutor
from math import exp, log, pi
from typing import Final

import numpy as np

from domain.abelian.measure import HeatMeasure
from domain.abelian.series import ThetaSeries
from domain.abelian.torus import PolarizedTorus
from domain.common import EllipticModulus
from domain.cst.transform import PsiDistribution, psi_image_series
from domain.errors import ConvergenceError
from domain.gram.quadrature import QuadratureGrid, default_points, generic_offset
from domain.gram.report import GramReport
from domain.nonabelian.theta import minus_frame
from domain.rootsys import RootSystem, inner_product, level_k_weights

REFINEMENT_TOL: Final[float] = 1e-6
PREFACTOR_TOL: Final[float] = 1e-15
LOCAL_TOL: Final[float] = 1e-14
XI_CHUNK: Final[int] = 32
PROGRESS_STRIDE: Final[int] = 10_000

Shift = Callable[[np.ndarray], np.ndarray]


def frame_gram(
    frame: Sequence[ThetaSeries],
    measure: HeatMeasure,
    shift: Shift,
    grid: QuadratureGrid,
    *,
    scale: float = 1.0,
    threads: int = 1,
    echo: Callable[[str], None] | None = None,
) -> np.ndarray:
    """scale * int conj(f_i) f_j dnu over the cell, on the given grid."""
    if not frame:
        raise ValueError("frame_gram needs at least one series")
    if threads < 1:
        raise ValueError(f"threads must be >= 1, got {threads}")
    if measure.l != grid.l:
        raise ValueError(f"measure rank {measure.l} does not match grid rank {grid.l}")

    nodes = grid.nodes
    chunks = [nodes[start : start + XI_CHUNK] for start in range(0, len(nodes), XI_CHUNK)]

    def accumulate(chunk: np.ndarray) -> np.ndarray:
        partial = np.zeros((len(frame), len(frame)), dtype=np.complex128)
        for xi in chunk:
            w = shift(xi)
            log_half_measure = 0.5 * measure.log_value(xi)
            values = np.empty((len(frame), len(nodes)), dtype=np.complex128)
            for row, series in enumerate(frame):
                terms = series.local_terms(w, tol=LOCAL_TOL)
                values[row] = grid.trig_values(terms.frequencies, terms.values) * exp(
                    terms.log_envelope + log_half_measure
                )
            partial += values.conj() @ values.T
        return partial

    partials = []
    done = reported = 0
    with ThreadPoolExecutor(max_workers=threads) as pool:
        for chunk, partial in zip(chunks, pool.map(accumulate, chunks)):
            partials.append(partial)
            done += len(chunk) * len(nodes)
            if echo is not None and done - reported >= PROGRESS_STRIDE:
                reported = done
                echo(f"gram progress nodes={done} total={grid.size}")

    gram = np.sum(np.stack(partials), axis=0) * (grid.weight * scale)
    return 0.5 * (gram + gram.conj().T)


def refined_gram(
    build: Callable[[QuadratureGrid], np.ndarray],
    l: int,
    N: int,
    offset: np.ndarray | None,
    refine: bool,
) -> tuple[np.ndarray, float | None]:
    """Build on N points and, when asked, again on 1.5N; the second value is the entrywise change."""
    matrix = build(QuadratureGrid(l, N, offset))
    if not refine:
        return matrix, None
    finer_N = N + N // 2
    finer_offset = None if offset is None else offset * N / finer_N
    finer = build(QuadratureGrid(l, finer_N, finer_offset))
    delta = float(np.abs(finer - matrix).max())
    if delta > REFINEMENT_TOL:
        raise ConvergenceError(
            f"Gram changed by {delta:.3g} > {REFINEMENT_TOL:g} between N={N} and N={finer_N}; "
            f"trace: N={N} N={finer_N} delta={delta:.3g}"
        )
    return matrix, delta


def _log_summary(echo: Callable[[str], None] | None, report: GramReport, extra: str) -> None:
    if echo is None:
        return
    echo(
        f"gram kind={report.kind} {extra} N={report.N_used} "
        f"seconds={report.seconds:.2f} max_offdiag={report.max_offdiag:.3g} "
        f"max_diag_deviation={report.max_diag_deviation:.3g}"
    )


def abelian_gram(
    torus: PolarizedTorus,
    *,
    N: int | None = None,
    t: float | None = None,
    offset: np.ndarray | None = None,
    refine: bool = False,
    threads: int = 1,
    echo: Callable[[str], None] | None = None,
) -> GramReport:
    """Gram of the level-k theta basis of the torus against the averaged heat measure nu_t."""
    started = time.perf_counter()
    N = default_points(torus.l) if N is None else N
    labels = torus.labels()
    frame = [torus.theta_series(label) for label in labels]
    measure = HeatMeasure.for_torus(torus, t)
    delta = np.asarray(torus.delta, dtype=np.float64)

    def shift(xi: np.ndarray) -> np.ndarray:
        return torus.omega @ (delta * xi)

    matrix, refinement_delta = refined_gram(
        lambda grid: frame_gram(frame, measure, shift, grid, threads=threads, echo=echo),
        torus.l,
        N,
        offset,
        refine,
    )
    report = GramReport(
        kind="abelian",
        matrix=matrix,
        labels=tuple(str(label.m) for label in labels),
        N_used=N,
        seconds=time.perf_counter() - started,
        t=measure.t,
        normalization=measure.normalization,
        refinement_delta=refinement_delta,
        parameters={"l": torus.l, "k": torus.k, "delta": list(torus.delta)},
    )
    _log_summary(echo, report, f"l={torus.l} k={torus.k} delta={list(torus.delta)}")
    return report


def _coroot_shift(tau: EllipticModulus) -> Shift:
    def shift(s: np.ndarray) -> np.ndarray:
        return tau.tau * s

    return shift


def _minus_frame_gram(
    rs: RootSystem,
    k: int,
    tau: EllipticModulus,
    *,
    N: int,
    offset: np.ndarray | None,
    refine: bool,
    threads: int,
    echo: Callable[[str], None] | None,
) -> tuple[np.ndarray, float | None, HeatMeasure, list[str]]:
    pairs = minus_frame(rs, k, tau)
    frame = [series for _, series in pairs]
    measure = HeatMeasure.for_coroot_cell(rs, tau, 1.0 / (k + rs.n))
    matrix, refinement_delta = refined_gram(
        lambda grid: frame_gram(
            frame,
            measure,
            _coroot_shift(tau),
            grid,
            scale=1.0 / rs.weyl_order,
            threads=threads,
            echo=echo,
        ),
        rs.l,
        N,
        offset,
        refine,
    )
    return matrix, refinement_delta, measure, [str(gamma) for gamma, _ in pairs]


def nonabelian_gram(
    rs: RootSystem,
    k: int,
    tau: EllipticModulus,
    *,
    N: int | None = None,
    offset: np.ndarray | None = None,
    refine: bool = False,
    threads: int = 1,
    echo: Callable[[str], None] | None = None,
) -> GramReport:
    """Gram of the hat frame, computed as (1/|W|) int conj(theta^-) theta^- at level k+n."""
    if rs.n == 2:
        raise ValueError("SU(2) carries the half-normalized polarization; use domain.su2.su2_gram")
    if k < 0:
        raise ValueError(f"level must be >= 0, got k={k}")
    started = time.perf_counter()
    N = default_points(rs.l) if N is None else N
    offset = generic_offset(rs.l, N) if offset is None else offset
    matrix, refinement_delta, measure, labels = _minus_frame_gram(
        rs, k, tau, N=N, offset=offset, refine=refine, threads=threads, echo=echo
    )
    report = GramReport(
        kind="nonabelian",
        matrix=matrix,
        labels=tuple(labels),
        N_used=N,
        seconds=time.perf_counter() - started,
        t=measure.t,
        normalization=measure.normalization,
        refinement_delta=refinement_delta,
        parameters={"n": rs.n, "k": k, "tau": [tau.tau.real, tau.tau.imag]},
    )
    _log_summary(echo, report, f"n={rs.n} k={k}")
    return report


def _hall_prefactor_log(rs: RootSystem, tau: EllipticModulus, t: float) -> float:
    """log of exp(-2 t pi tau_2 |rho|^2), the weight of the modified Hall product."""
    return -2.0 * t * pi * tau.tau2 * float(inner_product(rs, rs.rho, rs.rho))


def hall_gram(
    rs: RootSystem,
    k: int,
    tau: EllipticModulus,
    *,
    t: float | None = None,
    N: int | None = None,
    offset: np.ndarray | None = None,
    refine: bool = False,
    threads: int = 1,
    echo: Callable[[str], None] | None = None,
) -> GramReport:
    """Gram of sigma*C_t(psi_gamma), gamma in D_k, under exp(-2 t pi tau_2 |rho|^2) nu_t / |W|.

    At t = 1/(k+n) this is the identity. At any other t the images are no longer
    level-(k+n) theta functions and the matrix drifts away from it.
    """
    if k < 0:
        raise ValueError(f"level must be >= 0, got k={k}")
    t = 1.0 / (k + rs.n) if t is None else float(t)
    if not t > 0.0:
        raise ValueError(f"t must be > 0, got t={t}")
    started = time.perf_counter()
    N = default_points(rs.l) if N is None else N
    offset = generic_offset(rs.l, N) if offset is None else offset
    gammas = level_k_weights(rs, k)
    frame = [psi_image_series(PsiDistribution(rs, gamma, k), tau, t) for gamma in gammas]
    measure = HeatMeasure.for_coroot_cell(rs, tau, t)
    scale = exp(_hall_prefactor_log(rs, tau, t)) / rs.weyl_order
    matrix, refinement_delta = refined_gram(
        lambda grid: frame_gram(
            frame, measure, _coroot_shift(tau), grid, scale=scale, threads=threads, echo=echo
        ),
        rs.l,
        N,
        offset,
        refine,
    )
    report = GramReport(
        kind="hall",
        matrix=matrix,
        labels=tuple(str(gamma) for gamma in gammas),
        N_used=N,
        seconds=time.perf_counter() - started,
        t=t,
        normalization=measure.normalization,
        refinement_delta=refinement_delta,
        parameters={"n": rs.n, "k": k, "tau": [tau.tau.real, tau.tau.imag]},
    )
    _log_summary(echo, report, f"n={rs.n} k={k} t={t:g}")
    return report


def hall_prefactor_cancellation(rs: RootSystem, k: int, tau: EllipticModulus) -> float:
    """|exp(-i pi tau |rho|^2/(k+n))|^2 exp(-2 pi tau_2 |rho|^2/(k+n)) - 1, evaluated in log space."""
    t = 1.0 / (k + rs.n)
    rho_norm = float(inner_product(rs, rs.rho, rs.rho))
    prefactor = np.exp(-1j * pi * tau.tau * t * rho_norm)
    return abs(exp(2.0 * log(abs(prefactor)) + _hall_prefactor_log(rs, tau, t)) - 1.0)


def hall_inner_product_check(
    rs: RootSystem,
    k: int,
    tau: EllipticModulus,
    *,
    N: int | None = None,
    threads: int = 1,
    echo: Callable[[str], None] | None = None,
) -> float:
    """Largest entrywise gap between the Hall route and the anti-invariant product route."""
    cancellation = hall_prefactor_cancellation(rs, k, tau)
    if cancellation > PREFACTOR_TOL:
        raise ArithmeticError(f"Hall prefactor does not cancel: {cancellation:.3g} > {PREFACTOR_TOL:g}")
    N = default_points(rs.l) if N is None else N
    offset = generic_offset(rs.l, N)
    hall = hall_gram(rs, k, tau, N=N, offset=offset, threads=threads, echo=echo)
    product, _, _, _ = _minus_frame_gram(
        rs, k, tau, N=N, offset=offset, refine=False, threads=threads, echo=echo
    )
    residual = float(np.abs(hall.matrix - product).max())
    if echo is not None:
        echo(f"hall_check n={rs.n} k={k} N={N} residual={residual:.3g}")
    return residual


__all__ = [
    "PREFACTOR_TOL",
    "REFINEMENT_TOL",
    "abelian_gram",
    "frame_gram",
    "hall_gram",
    "hall_inner_product_check",
    "hall_prefactor_cancellation",
    "nonabelian_gram",
    "refined_gram",
]
