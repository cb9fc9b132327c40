"""Tests for the exact root-system layer: inner products, Casimirs, Weyl action."""

from __future__ import annotations

from fractions import Fraction
from math import comb

import numpy as np
import pytest

from domain.errors import ResourceLimitError
from domain.rootsys import (
    RootSystem,
    Weight,
    casimir,
    inner_product,
    level_k_weights,
    simple_reflection,
    weyl_act,
    weyl_group,
)


def _cartan_times_inverse(rs: RootSystem) -> list[list[Fraction]]:
    return [
        [sum((int(rs.cartan[i, m]) * rs.cartan_inv[m][j] for m in range(rs.l)), Fraction(0)) for j in range(rs.l)]
        for i in range(rs.l)
    ]


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_cartan_inverse_is_exact(n: int) -> None:
    rs = RootSystem(n)
    identity = _cartan_times_inverse(rs)
    assert identity == [[Fraction(int(i == j)) for j in range(rs.l)] for i in range(rs.l)]
    assert round(np.linalg.det(rs.cartan.astype(float))) == n
    assert rs.weyl_order == [2, 6, 24, 120, 720][n - 2]


def test_highest_root_labels() -> None:
    assert RootSystem(2).highest_root == Weight((2,))
    assert RootSystem(3).highest_root == Weight((1, 1))
    assert RootSystem(5).highest_root == Weight((1, 0, 0, 1))


def test_rho_norms() -> None:
    assert inner_product(RootSystem(2), Weight((1,)), Weight((1,))) == Fraction(1, 2)
    assert inner_product(RootSystem(3), Weight((1, 1)), Weight((1, 1))) == 2
    assert inner_product(RootSystem(4), Weight((0, 0, 0)), Weight((3, 1, 2))) == 0
    for n in range(2, 7):
        rs = RootSystem(n)
        assert rs.norm_squared(rs.rho) == Fraction(n * (n * n - 1), 12)


def test_inner_product_rejects_wrong_length() -> None:
    with pytest.raises(ValueError, match="length l=2"):
        inner_product(RootSystem(3), Weight((1,)), Weight((1, 0)))


def test_casimir_values() -> None:
    assert casimir(RootSystem(2), Weight((0,))) == 0
    assert casimir(RootSystem(2), Weight((2,))) == 4
    assert casimir(RootSystem(3), Weight((1, 0))) == Fraction(8, 3)
    for m in range(6):
        assert casimir(RootSystem(2), Weight((m,))) == Fraction(m * (m + 2), 2)


def test_casimir_is_positive_off_zero() -> None:
    rs = RootSystem(4)
    for lam in level_k_weights(rs, 3)[1:]:
        assert casimir(rs, lam) > 0


def test_casimir_rejects_non_dominant() -> None:
    with pytest.raises(ValueError, match="dominant"):
        casimir(RootSystem(3), Weight((-1, 2)))


def test_weyl_group_orders_and_signs() -> None:
    s2 = weyl_group(RootSystem(2))
    assert [w.sign for w in s2] == [1, -1]
    assert s2[0].is_identity()

    s3 = weyl_group(RootSystem(3))
    assert len(s3) == 6
    assert sum(w.sign == 1 for w in s3) == 3

    s4 = weyl_group(RootSystem(4))
    assert len(s4) == 24
    assert sum(w.sign for w in s4) == 0


def test_weyl_group_size_limit() -> None:
    with pytest.raises(ResourceLimitError, match="configured maximum"):
        weyl_group(RootSystem(9))


def test_weyl_act_examples() -> None:
    rs2 = RootSystem(2)
    identity, swap = weyl_group(rs2)
    assert weyl_act(identity, Weight((5,))) == Weight((5,))
    assert weyl_act(swap, Weight((3,))) == Weight((-3,))

    rs3 = RootSystem(3)
    assert weyl_act(simple_reflection(rs3, 0), Weight((1, 0))) == Weight((-1, 1))


def test_simple_reflection_matches_root_formula() -> None:
    rs = RootSystem(4)
    lam = Weight((2, -1, 3))
    for i in range(rs.l):
        expected = lam - rs.simple_root(i).scaled(lam.labels[i])
        assert simple_reflection(rs, i).act(lam) == expected


def test_weyl_action_is_homomorphism_and_isometry() -> None:
    rs = RootSystem(4)
    group = weyl_group(rs)
    a = Weight((1, 2, 0))
    b = Weight((0, -1, 3))
    for w in group[::5]:
        assert inner_product(rs, w.act(a), w.act(b)) == inner_product(rs, a, b)
        for v in group[::7]:
            composed = w.compose(v)
            assert composed.sign == w.sign * v.sign
            assert composed.act(a) == w.act(v.act(a))
        assert w.inverse().act(w.act(a)) == a


def test_action_on_points_is_dual_to_action_on_weights() -> None:
    rs = RootSystem(4)
    rng = np.random.default_rng(7)
    z = rng.normal(size=rs.l) + 1j * rng.normal(size=rs.l)
    lam = Weight((1, -2, 3))
    for w in weyl_group(rs):
        left = np.dot(lam.as_array(), w.act_on_point(z))
        right = np.dot(w.inverse().act(lam).as_array(), z)
        assert left == pytest.approx(right, abs=1e-12)


def test_level_k_weights_examples() -> None:
    rs = RootSystem(3)
    assert level_k_weights(rs, 1) == [Weight((0, 0)), Weight((0, 1)), Weight((1, 0))]
    assert len(level_k_weights(rs, 2)) == 6
    for n in range(2, 6):
        assert level_k_weights(RootSystem(n), 0) == [Weight((0,) * (n - 1))]


def test_level_k_weights_match_verlinde_counts() -> None:
    for n in range(2, 7):
        rs = RootSystem(n)
        for k in range(9):
            assert len(level_k_weights(rs, k)) == comb(n + k - 1, k)


def test_level_k_weights_rejects_negative_level() -> None:
    with pytest.raises(ValueError, match="level must be >= 0"):
        level_k_weights(RootSystem(3), -1)


def test_positive_roots_in_labels() -> None:
    rs = RootSystem(3)
    assert rs.positive_root_weights == (Weight((2, -1)), Weight((1, 1)), Weight((-1, 2)))
    assert len(RootSystem(5).positive_roots) == 10
