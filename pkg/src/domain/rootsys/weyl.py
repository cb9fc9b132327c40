"""The Weyl group S_n acting on weights and on the complexified Cartan."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from typing import Final

import numpy as np

from domain.errors import ResourceLimitError
from domain.rootsys.lattice import (
    RootSystem,
    Weight,
    epsilon_coordinates,
    from_epsilon_coordinates,
)

MAX_WEYL_N: Final[int] = 8


@dataclass(frozen=True)
class WeylElement:
    """A permutation w of {0..n-1} sending e_i to e_{perm[i]}, with its sign."""

    perm: tuple[int, ...]
    sign: int

    def __post_init__(self) -> None:
        perm = tuple(int(i) for i in self.perm)
        if sorted(perm) != list(range(len(perm))):
            raise ValueError(f"not a permutation of 0..{len(perm) - 1}: {perm}")
        if self.sign != _parity(perm):
            raise ValueError(f"sign {self.sign} does not match parity of {perm}")
        object.__setattr__(self, "perm", perm)

    @classmethod
    def from_perm(cls, perm: tuple[int, ...]) -> WeylElement:
        return cls(perm=tuple(perm), sign=_parity(tuple(perm)))

    @classmethod
    def identity(cls, n: int) -> WeylElement:
        return cls(perm=tuple(range(n)), sign=1)

    @property
    def n(self) -> int:
        return len(self.perm)

    def is_identity(self) -> bool:
        return all(i == p for i, p in enumerate(self.perm))

    def compose(self, other: WeylElement) -> WeylElement:
        """self after other."""
        if other.n != self.n:
            raise ValueError("cannot compose Weyl elements of different rank")
        return WeylElement(
            perm=tuple(self.perm[other.perm[i]] for i in range(self.n)),
            sign=self.sign * other.sign,
        )

    def inverse(self) -> WeylElement:
        inverse = [0] * self.n
        for i, image in enumerate(self.perm):
            inverse[image] = i
        return WeylElement(perm=tuple(inverse), sign=self.sign)

    def act(self, weight: Weight) -> Weight:
        return weyl_act(self, weight)

    def act_on_point(self, z: np.ndarray) -> np.ndarray:
        """Action on coroot coordinates; supports a trailing axis of length l."""
        z = np.asarray(z)
        if z.shape[-1] != self.n - 1:
            raise ValueError(f"expected coroot coordinates of length {self.n - 1}")
        zero = np.zeros(z.shape[:-1] + (1,), dtype=z.dtype)
        padded = np.concatenate([zero, z, zero], axis=-1)
        h = np.diff(padded, axis=-1)
        moved = np.empty_like(h)
        moved[..., list(self.perm)] = h
        return np.cumsum(moved, axis=-1)[..., :-1]


def weyl_act(w: WeylElement, lam: Weight) -> Weight:
    if lam.rank != w.n - 1:
        raise ValueError(f"weight of rank {lam.rank} cannot be acted on by S_{w.n}")
    coords = epsilon_coordinates(lam.labels)
    moved = [0] * w.n
    for i, image in enumerate(w.perm):
        moved[image] = coords[i]
    return Weight(from_epsilon_coordinates(moved))


def weyl_group(rs: RootSystem, *, max_n: int = MAX_WEYL_N) -> list[WeylElement]:
    """All n! elements, identity first."""
    if rs.n > max_n:
        raise ResourceLimitError(
            f"Weyl group of S_{rs.n} has {rs.weyl_order} elements; configured maximum is n={max_n}"
        )
    return list(_weyl_group(rs.n))


def simple_reflection(rs: RootSystem, i: int) -> WeylElement:
    if not 0 <= i < rs.l:
        raise ValueError(f"simple reflection index must be in [0, {rs.l}), got {i}")
    perm = list(range(rs.n))
    perm[i], perm[i + 1] = perm[i + 1], perm[i]
    return WeylElement(perm=tuple(perm), sign=-1)


def highest_root_reflection(rs: RootSystem) -> WeylElement:
    perm = list(range(rs.n))
    perm[0], perm[-1] = perm[-1], perm[0]
    return WeylElement(perm=tuple(perm), sign=-1)


def signed_orbit(rs: RootSystem, weight: Weight) -> tuple[np.ndarray, np.ndarray]:
    """Images w(weight) over all of W as an integer array, with the signs of w."""
    return _signed_orbit(rs.n, weight.labels)


@lru_cache(maxsize=None)
def _weyl_group(n: int) -> tuple[WeylElement, ...]:
    return tuple(WeylElement(perm=perm, sign=_parity(perm)) for perm in permutations(range(n)))


@lru_cache(maxsize=4096)
def _signed_orbit(n: int, labels: tuple[int, ...]) -> tuple[np.ndarray, np.ndarray]:
    weight = Weight(labels)
    elements = _weyl_group(n)
    images = np.asarray([weyl_act(w, weight).labels for w in elements], dtype=np.int64)
    signs = np.asarray([w.sign for w in elements], dtype=np.int64)
    images.setflags(write=False)
    signs.setflags(write=False)
    return images, signs


def _parity(perm: tuple[int, ...]) -> int:
    inversions = 0
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                inversions += 1
    return -1 if inversions % 2 else 1


__all__ = [
    "MAX_WEYL_N",
    "WeylElement",
    "highest_root_reflection",
    "signed_orbit",
    "simple_reflection",
    "weyl_act",
    "weyl_group",
]
