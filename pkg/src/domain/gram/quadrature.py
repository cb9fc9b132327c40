"""Uniform shifted product grids on the 2l-torus [0,1)^l x [0,1)^l."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Final

import numpy as np

from domain.abelian.series import integral_frequencies

DEFAULT_POINTS: Final[dict[int, int]] = {1: 64, 2: 24, 3: 12}
MIN_POINTS: Final[int] = 4
_GOLDEN: Final[float] = 0.6180339887498949


def default_points(l: int) -> int:
    return DEFAULT_POINTS.get(l, 8)


def generic_offset(l: int, N: int) -> np.ndarray:
    """Per-dimension offsets in (0, 1/N) drawn from fractional parts of multiples of the golden ratio."""
    fractions = (np.arange(1, l + 1) * _GOLDEN) % 1.0
    return (0.25 + 0.5 * fractions) / N


@dataclass(frozen=True, eq=False)
class QuadratureGrid:
    """Nodes j/N + offset in each of the 2l coordinates; every node weighs 1/N^(2l)."""

    l: int
    points_per_dim: int
    offset: np.ndarray | None = None

    def __post_init__(self) -> None:
        if self.l < 1:
            raise ValueError(f"l must be >= 1, got {self.l}")
        if self.points_per_dim < MIN_POINTS:
            raise ValueError(f"points_per_dim must be >= {MIN_POINTS}, got {self.points_per_dim}")
        offset = (
            np.full(self.l, 0.5 / self.points_per_dim)
            if self.offset is None
            else np.asarray(self.offset, dtype=np.float64)
        )
        if offset.shape != (self.l,):
            raise ValueError(f"offset must have length {self.l}, got shape {offset.shape}")
        if np.any(offset < 0.0) or np.any(offset >= 1.0 / self.points_per_dim):
            raise ValueError(f"offset entries must lie in [0, 1/N), got {offset.tolist()}")
        offset.setflags(write=False)
        object.__setattr__(self, "offset", offset)

    @property
    def N(self) -> int:
        return self.points_per_dim

    @property
    def weight(self) -> float:
        return 1.0 / float(self.N) ** (2 * self.l)

    @property
    def size(self) -> int:
        return self.N ** (2 * self.l)

    @cached_property
    def nodes(self) -> np.ndarray:
        """All N^l nodes of one [0,1)^l factor, in C order of the multi-index."""
        axis = np.arange(self.N) / self.N
        grid = np.stack(np.meshgrid(*([axis] * self.l), indexing="ij"), axis=-1).reshape(-1, self.l)
        grid = grid + self.offset
        grid.setflags(write=False)
        return grid

    def trig_values(self, frequencies: np.ndarray, values: np.ndarray) -> np.ndarray:
        """sum_u values_u exp(2 pi i u.x) at every node x, as a flat array in node order."""
        u = integral_frequencies(np.atleast_2d(frequencies))
        twisted = values * np.exp(2j * np.pi * (u @ self.offset))
        buckets = np.zeros((self.N,) * self.l, dtype=np.complex128)
        np.add.at(buckets, tuple((u % self.N).T), twisted)
        return (np.fft.ifftn(buckets) * self.N**self.l).reshape(-1)


__all__ = ["DEFAULT_POINTS", "QuadratureGrid", "default_points", "generic_offset"]
