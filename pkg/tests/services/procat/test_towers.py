"""
Тесты башен, переиндексаций и диагоналей.
"""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from app.core.exceptions import (NonCommutingSquareError, NotCofinalError,
                                 TailMismatchError, WindowExhaustedError)
from app.schemas.v1.verdicts import TailKind
from app.services.v1.abelian import GroupHom, TailRule
from app.services.v1.complexes import ChainMap, shift, sphere
from app.services.v1.procat import (GROUPS, SPECTRA, BiTower, Reindex,
                                    ReindexKind, Tower, constant, diagonalize,
                                    reindexed_tail)


def test_constant_tower_beyond_window(Z):
    tower = constant(Z, window=2)
    assert tower.level(40) == Z
    assert tower.bond(40) == GroupHom.identity(Z)
    assert tower.composite(7, 3) == GroupHom.identity(Z)


def test_tower_without_tail_stops_at_window(Z, times_two):
    tower = Tower.from_levels((Z, Z), (times_two,))
    assert tower.level(1) == Z
    assert not tower.available(2)
    with pytest.raises(WindowExhaustedError):
        tower.level(2)


def test_tail_checked_against_window(Z, times_two):
    with pytest.raises(TailMismatchError):
        Tower.from_levels((Z, Z), (times_two,), TailRule.constant(0))


def test_periodic_spectrum_tower():
    S = sphere(0)
    tower = Tower(
        SPECTRA,
        lambda s: shift(S, 2 * s),
        lambda s: ChainMap.zero(shift(S, 2 * s + 2), shift(S, 2 * s)),
        window=2,
        tail=TailRule.periodic(0, 1, 2),
    )
    assert tower.level(5) == shift(S, 10)
    assert tower.bond(6).is_zero()


def test_composite_of_doubling(Z, times_two):
    tower = Tower(GROUPS, lambda s: Z, lambda s: times_two, 3, TailRule.periodic(0))
    assert tower.composite(5, 2) == times_two @ times_two @ times_two


@pytest.mark.parametrize(
    "build",
    [
        lambda: Reindex.shifted(-1),
        lambda: Reindex.scaled(0),
        lambda: Reindex.from_table((3, 1)),
        lambda: Reindex.from_table((-1, 2)),
    ],
)
def test_not_cofinal(build):
    with pytest.raises(NotCofinalError):
        build()


def test_reindex_values():
    assert Reindex.identity()(4) == 4
    assert Reindex.shifted(3)(4) == 7
    assert Reindex.scaled(2)(4) == 8
    table = Reindex.from_table((0, 0, 5))
    assert table.kind == ReindexKind.TABLE
    assert [table(s) for s in range(5)] == [0, 0, 5, 6, 7]


def test_arithmetic_table_becomes_shift():
    assert Reindex.from_table((2, 3, 4)) == Reindex.shifted(2)


def test_reindex_composition():
    theta = Reindex.shifted(2).then(Reindex.scaled(3))
    assert theta(1) == 9
    assert theta.affine() == (0, 3, 6)
    assert Reindex.shifted(1).then(Reindex.shifted(2)) == Reindex.shifted(3)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 5), st.integers(1, 4), st.integers(0, 30))
def test_first_reaching_is_minimal(c, k, level):
    theta = Reindex.shifted(c).then(Reindex.scaled(k))
    u = theta.first_reaching(level)
    assert theta(u) >= level
    assert u == 0 or theta(u - 1) < level


def test_reindexed_tails():
    tail = reindexed_tail(TailRule.constant(5), Reindex.shifted(3))
    assert tail == TailRule.constant(2)
    assert reindexed_tail(TailRule.periodic(2, 2, 2), Reindex.scaled(2)) == (
        TailRule.periodic(1, 1, 2)
    )
    assert reindexed_tail(None, Reindex.scaled(2)) is None
    assert reindexed_tail(TailRule.zero(4), Reindex.identity()).kind == (
        TailKind.EVENTUALLY_ZERO
    )


def test_diagonal_of_constant_family(Z):
    identity = GroupHom.identity(Z)
    family = BiTower(
        GROUPS,
        lambda s, q: Z,
        lambda s, q: identity,
        lambda s, q: identity,
        window=3,
        name="const",
    )
    diagonal = diagonalize(family)
    assert diagonal.chain[:2] == ((0, 0), (1, 1))
    assert diagonal.tower.level(2) == Z
    assert diagonal.tower.bond(1) == identity


def test_diagonal_rejects_noncommuting_family(Z, times_two):
    identity = GroupHom.identity(Z)
    family = BiTower(
        GROUPS,
        lambda s, q: Z,
        lambda s, q: times_two if (s, q) == (0, 1) else identity,
        lambda s, q: identity,
        window=3,
    )
    with pytest.raises(NonCommutingSquareError):
        diagonalize(family)
