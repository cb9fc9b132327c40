"""Tests for dilated-alcove reduction and affine orbit enumeration."""

from __future__ import annotations

import itertools

import numpy as np
import pytest

from domain.errors import SingularWeightError
from domain.rootsys import (
    RootSystem,
    Weight,
    affine_orbit,
    alcove_reduce,
    inner_product,
    lattice_class_key,
    level_k_weights,
    level_orbit_representative,
    on_affine_wall,
    weyl_group,
)


def test_alcove_reduce_fixes_alcove_points() -> None:
    rs = RootSystem(3)
    mu = Weight((1, 2))
    witness = alcove_reduce(rs, mu, 4)
    assert witness.base == mu
    assert witness.weyl.is_identity()
    assert witness.translation == (0, 0)
    assert witness.sign == 1


def test_alcove_reduce_rank_one_examples() -> None:
    rs = RootSystem(2)

    shifted = alcove_reduce(rs, Weight((4,)), 3)
    assert shifted.base == Weight((2,))
    assert shifted.sign == -1
    assert shifted.translation == (1,)

    reflected = alcove_reduce(rs, Weight((-1,)), 3)
    assert reflected.base == Weight((1,))
    assert reflected.sign == -1
    assert reflected.translation == (0,)


def test_alcove_reduce_rejects_wall_points() -> None:
    rs = RootSystem(3)
    with pytest.raises(SingularWeightError, match="singular weight"):
        alcove_reduce(rs, Weight((0, 2)), 4)
    with pytest.raises(SingularWeightError):
        alcove_reduce(rs, Weight((2, 2)), 4)
    with pytest.raises(ValueError, match="level_shifted must be >= n"):
        alcove_reduce(rs, Weight((1, 1)), 2)


def test_alcove_reduce_inverts_affine_action() -> None:
    rs = RootSystem(3)
    level = 5
    base = Weight((1, 2))
    for w in weyl_group(rs):
        for beta in itertools.product(range(-2, 3), repeat=rs.l):
            mu = w.act(base) + rs.from_root_coordinates(beta).scaled(level)
            witness = alcove_reduce(rs, mu, level)
            assert witness.base == base
            assert witness.weyl == w
            assert witness.translation == beta
            assert witness.reconstruct(rs) == mu


def test_on_affine_wall() -> None:
    rs = RootSystem(3)
    assert on_affine_wall(rs, Weight((1, 1)), 4) is False
    assert on_affine_wall(rs, Weight((0, 1)), 4) is True
    assert on_affine_wall(rs, Weight((3, 1)), 4) is True


def test_affine_orbit_rank_one_example() -> None:
    orbit = affine_orbit(RootSystem(2), Weight((0,)), 1, 50)
    assert orbit == [(Weight((0,)), 1), (Weight((4,)), -1), (Weight((6,)), 1)]


def test_affine_orbit_rank_one_brute_force() -> None:
    rs = RootSystem(2)
    k, level = 2, 4
    for gamma in level_k_weights(rs, k):
        base = gamma.labels[0] + 1
        expected = []
        for m in range(1, 40):
            for sign, image in ((1, base), (-1, -base)):
                if (m - image) % (2 * level) == 0 and m * m <= 2 * 300:
                    expected.append((Weight((m - 1,)), sign))
        assert affine_orbit(rs, gamma, k, 300) == expected


def test_affine_orbit_minimal_cutoff_is_the_representative() -> None:
    rs = RootSystem(3)
    gamma = Weight((1, 0))
    shifted = gamma + rs.rho
    orbit = affine_orbit(rs, gamma, 2, inner_product(rs, shifted, shifted))
    assert orbit == [(gamma, 1)]


def test_affine_orbit_round_trips_through_reduction() -> None:
    rs = RootSystem(3)
    k = 1
    for gamma in level_k_weights(rs, k):
        orbit = affine_orbit(rs, gamma, k, 60)
        assert len(orbit) > 1
        for lam, sign in orbit:
            witness = alcove_reduce(rs, lam + rs.rho, k + rs.n)
            assert witness.base == gamma + rs.rho
            assert witness.sign == sign


def test_affine_orbit_rejects_labels_outside_level() -> None:
    with pytest.raises(ValueError, match="not in D_1"):
        affine_orbit(RootSystem(3), Weight((1, 1)), 1, 10)


def test_level_orbit_representative_lands_in_closed_alcove() -> None:
    rs = RootSystem(4)
    level = 3
    rng = np.random.default_rng(3)
    for _ in range(30):
        weight = Weight(tuple(int(v) for v in rng.integers(-9, 10, size=rs.l)))
        representative, linear = level_orbit_representative(rs, weight, level)
        assert representative.is_dominant()
        assert sum(representative.labels) <= level
        assert lattice_class_key(rs, representative - linear.act(weight), level) == (0,) * rs.l
