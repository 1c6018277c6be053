"""
Тесты прямых систем, копределов и ростков на бесконечности.
"""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from app.core.exceptions import WindowExhaustedError
from app.schemas.v1.verdicts import Scope
from app.services.v1.abelian import (ColimClass, FGAbelianGroup,
                                     FGDirectSystem, GermClass,
                                     GermDirectSystem, GroupHom, IntMatrix,
                                     colim_eq, colim_is_zero, colim_system)


def test_constant_system(Z):
    colimit = colim_system(FGDirectSystem.constant(Z))
    assert not colim_is_zero(colimit, ColimClass(0, (1,)))
    assert colimit.group == Z


def test_zero_bonds(Z):
    zero = GroupHom.zero(Z, Z)
    colimit = colim_system(FGDirectSystem.from_endomorphism(Z, zero))
    assert colim_is_zero(colimit, ColimClass(0, (1,)))
    assert colim_is_zero(colimit, ColimClass(7, (5,)))
    assert colimit.group.is_trivial()


def test_times_two_is_not_finitely_generated(Z, times_two):
    colimit = colim_system(FGDirectSystem.from_endomorphism(Z, times_two))
    assert colimit.group is None
    assert not colim_is_zero(colimit, ColimClass(0, (1,)))
    # 1 на уровне 0 переходит в 2 на уровне 1
    assert colim_eq(colimit, ColimClass(0, (1,)), ColimClass(1, (2,)))
    assert not colim_eq(colimit, ColimClass(0, (2,)), ColimClass(1, (2,)))


def test_torsion_killed_eventually():
    G = FGAbelianGroup.from_invariants(1, (4,))
    phi = GroupHom(G, G, IntMatrix.from_rows([[2, 0], [0, 1]]))
    colimit = colim_system(FGDirectSystem.from_endomorphism(G, phi))
    assert colim_is_zero(colimit, ColimClass(0, (1, 0)))
    assert not colim_is_zero(colimit, ColimClass(0, (0, 1)))
    assert colimit.group == FGAbelianGroup.free(1)


def test_window_without_tail(Z, times_two):
    system = FGDirectSystem((Z, Z), (times_two,))
    colimit = colim_system(system)
    assert colimit.scope == Scope.WINDOW
    with pytest.raises(WindowExhaustedError):
        colim_is_zero(colimit, ColimClass(0, (1,)))
    killed = FGDirectSystem((Z, Z), (GroupHom.zero(Z, Z),))
    assert colim_is_zero(colim_system(killed), ColimClass(0, (3,)))


@settings(max_examples=60, deadline=None)
@given(
    st.lists(
        st.tuples(st.integers(0, 3), st.integers(-4, 4)), min_size=3, max_size=3
    )
)
def test_colim_eq_is_equivalence(triples):
    G = FGAbelianGroup.cyclic(12)
    phi = GroupHom(G, G, IntMatrix.from_rows([[2]]))
    colimit = colim_system(FGDirectSystem.from_endomorphism(G, phi))
    a, b, c = (ColimClass(level, (value,)) for level, value in triples)
    assert colim_eq(colimit, a, a)
    assert colim_eq(colimit, a, b) == colim_eq(colimit, b, a)
    if colim_eq(colimit, a, b) and colim_eq(colimit, b, c):
        assert colim_eq(colimit, a, c)


class TestGerms:
    def test_all_ones_is_nonzero_at_every_level(self):
        system = GermDirectSystem()
        for level in range(10):
            assert not system.is_zero(system.all_ones(level))

    def test_finite_support_is_zero(self):
        system = GermDirectSystem()
        assert system.is_zero(GermClass(0, (1, 2, 3), (0,)))

    def test_eventual_agreement(self):
        system = GermDirectSystem()
        a = GermClass(0, (5,), (1, 2))
        b = GermClass(2, (), (2, 1, 2, 1))
        assert system.eq(a, b)
        assert a.push(3).coordinate(3) == a.coordinate(3)
        assert system.window_values(system.all_ones(), 4, 3) == (1, 1, 1)


def test_coordinates_of_periodic_colimit(Z):
    minus = GroupHom(Z, Z, IntMatrix.from_rows([[-1]]))
    colimit = colim_system(FGDirectSystem.from_endomorphism(Z, minus))
    assert colimit.group == Z
    first = colimit.coordinates(ColimClass(0, (1,)))
    assert colimit.coordinates(ColimClass(1, (-1,))) == first
    assert colimit.coordinates(ColimClass(3, (1,))) == tuple(-x for x in first)


def test_coordinates_unavailable_for_localization(Z, times_two):
    colimit = colim_system(FGDirectSystem.from_endomorphism(Z, times_two))
    assert colimit.coordinates(ColimClass(0, (1,))) is None
