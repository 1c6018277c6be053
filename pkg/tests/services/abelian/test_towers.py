"""
Тесты башен групп, lim и lim¹.
"""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from app.core.exceptions import TailMismatchError, WindowExhaustedError
from app.schemas.v1.verdicts import Lim1Status, Scope
from app.services.v1.abelian import (FGAbelianGroup, GroupHom, GroupTower,
                                     IntMatrix, TailRule, tower_lim,
                                     tower_lim1)
from tests.strategies import groups


def test_constant_tower(Z):
    tower = GroupTower.constant(Z, window=4)
    assert tower_lim(tower).group == Z
    assert tower_lim1(tower).status == Lim1Status.ZERO


def test_times_two_tower(Z, times_two):
    tower = GroupTower.from_endomorphism(Z, times_two, window=6)
    lim = tower_lim(tower)
    assert lim.group.is_trivial()
    assert lim.scope == Scope.TAIL
    assert tower_lim1(tower).status == Lim1Status.NONZERO


def test_eventually_zero_tower(Z):
    zero = FGAbelianGroup.zero()
    tower = GroupTower(
        (Z, Z, zero, zero),
        (
            GroupHom.identity(Z),
            GroupHom.zero(zero, Z),
            GroupHom.identity(zero),
        ),
        TailRule.zero(2),
    )
    assert tower_lim(tower).group.is_trivial()
    assert tower_lim1(tower).status == Lim1Status.ZERO


def test_untailed_tower_is_unknown(Z, times_two):
    tower = GroupTower((Z, Z), (times_two,))
    assert tower_lim(tower).group is None
    assert tower_lim(tower).certificate == "предел не определен без хвоста"
    assert tower_lim(tower).scope == Scope.WINDOW
    assert tower_lim1(tower).status == Lim1Status.UNKNOWN
    with pytest.raises(WindowExhaustedError):
        tower.level(5)


def test_tail_must_reproduce_window(Z, times_two):
    with pytest.raises(TailMismatchError):
        GroupTower((Z, Z, Z), (times_two, times_two), TailRule.constant(0))


def test_periodic_torsion_and_units():
    # Z/4 ⊕ Z с φ = (×2, ×1): T∞ = 0, свободная часть сохраняется
    G = FGAbelianGroup.from_invariants(1, (4,))
    phi = GroupHom(G, G, IntMatrix.from_rows([[2, 0], [0, 1]]))
    tower = GroupTower.from_endomorphism(G, phi, window=3)
    assert tower_lim(tower).group == FGAbelianGroup.free(1)
    assert tower_lim1(tower).status == Lim1Status.ZERO


def test_periodic_automorphism_of_torsion():
    G = FGAbelianGroup.cyclic(5)
    phi = GroupHom(G, G, IntMatrix.from_rows([[2]]))
    tower = GroupTower.from_endomorphism(G, phi, window=2)
    assert tower_lim(tower).group == G


def test_hyperbolic_free_part():
    G = FGAbelianGroup.free(2)
    phi = GroupHom(G, G, IntMatrix.from_rows([[2, 1], [1, 1]]))
    tower = GroupTower.from_endomorphism(G, phi, window=2)
    assert tower_lim(tower).group == G
    assert tower_lim1(tower).status == Lim1Status.ZERO


def test_mixed_eigenvalues():
    G = FGAbelianGroup.free(2)
    phi = GroupHom(G, G, IntMatrix.from_rows([[1, 0], [0, 3]]))
    tower = GroupTower.from_endomorphism(G, phi, window=2)
    assert tower_lim(tower).group == FGAbelianGroup.free(1)
    assert tower_lim1(tower).status == Lim1Status.NONZERO


@settings(max_examples=50, deadline=None)
@given(groups(), st.integers(0, 3), st.integers(0, 3))
def test_eventually_constant_towers(group, prefix, extra):
    # Произвольные уровни до start, затем постоянный хвост
    zero = FGAbelianGroup.zero()
    levels = (zero,) * prefix + (group,) * (extra + 1)
    bonds = tuple(
        GroupHom.zero(levels[s + 1], levels[s])
        if s < prefix
        else GroupHom.identity(group)
        for s in range(len(levels) - 1)
    )
    tower = GroupTower(levels, bonds, TailRule.constant(prefix))
    assert tower_lim1(tower).status == Lim1Status.ZERO
    assert tower_lim(tower).group == group


def test_tail_combination():
    periodic = TailRule.periodic(1, period=2, shift=2)
    other = TailRule.periodic(0, period=3, shift=3)
    combined = periodic.combine(other)
    assert (combined.start, combined.period, combined.shift) == (1, 6, 6)
    assert TailRule.periodic(0, 1, 2).combine(TailRule.periodic(0, 1, 1)) is None
    assert TailRule.zero(4).combine(periodic).start == 4
    assert TailRule.constant(0).combine(TailRule.periodic(0, 1, 2)) is None


def test_vanishing_start():
    rule = TailRule.periodic(0, period=1, shift=2)
    # уровень s сосредоточен в степенях [2s, 2s + 4]
    assert rule.vanishing_start(0, 4, 6, 6) == 4
    assert TailRule.periodic(2, 1, -1).vanishing_start(0, 0, 0, 0) == 3
