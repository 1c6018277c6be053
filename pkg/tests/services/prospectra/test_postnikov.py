"""
Тесты постниковской замены, ограниченности сверху и постоянных хвостов.
"""

import pytest
from hypothesis import given, settings

from app.core.config import config
from app.schemas.v1.verdicts import Scope, TailKind, Verdict
from app.services.v1.abelian import FGAbelianGroup
from app.services.v1.complexes import (ChainMap, cpn, em_spectrum, homology,
                                       sphere)
from app.services.v1.procat import Tower, constant, is_pro_isomorphism
from app.services.v1.prospectra import (FORMAL_KU, counterexample, cpn_tower,
                                        essentially_constant,
                                        is_essentially_bounded_above,
                                        is_pi_weak_equivalence, ku,
                                        postnikov_replacement,
                                        replacement_tail, zero_tower)
from tests.strategies import pro_spectra


@pytest.fixture
def tower():
    return counterexample(width=2, window=4)


@pytest.fixture
def HZ(Z):
    return em_spectrum(Z, 0)


def test_replacement_of_counterexample_vanishes(tower):
    replacement = postnikov_replacement(tower)
    assert homology(replacement.tower.level(0), 0).describe() == "Z"
    for s in (1, 2, 5):
        assert replacement.tower.level(s).is_zero()
    assert replacement.tower.tail.kind == TailKind.EVENTUALLY_ZERO
    assert replacement.tower.tail.start == 1


def test_unit_of_counterexample_is_weak_equivalence(tower):
    replacement = postnikov_replacement(tower)
    assert is_pi_weak_equivalence(replacement.unit, (-1, 2)).certified


def test_replacement_of_constant_eilenberg_maclane(HZ):
    replacement = postnikov_replacement(constant(HZ, window=2))
    assert replacement.tower.level(5) == HZ
    assert is_pro_isomorphism(replacement.unit).certified


def test_replacement_truncates_levels():
    replacement = postnikov_replacement(cpn_tower(2, window=3))
    assert homology(replacement.tower.level(2), 2).describe() == "Z"
    assert homology(replacement.tower.level(2), 4).is_trivial()
    assert replacement.tower.level(6) == cpn(2)


@pytest.mark.parametrize("offset, start", [(0, 1), (1, 0)])
def test_replacement_tail_of_counterexample(tower, offset, start):
    tail = replacement_tail(tower, offset)
    assert tail.kind == TailKind.EVENTUALLY_ZERO
    assert tail.start == start


def test_replacement_tail_of_constant():
    tail = replacement_tail(cpn_tower(2, window=2), 0)
    assert tail.kind == TailKind.EVENTUALLY_CONSTANT
    assert tail.start == 4


def test_replacement_tail_needs_tail():
    X = sphere(0)
    windowed = Tower.from_levels((X, X), (ChainMap.identity(X),))
    assert replacement_tail(windowed, 0) is None


def test_formal_ku_is_not_fibrant():
    report = is_essentially_bounded_above(FORMAL_KU)
    assert report.verdict == Verdict.REFUTED
    assert "π_k" in report.note


def test_towers_are_bounded_above(tower):
    report = is_essentially_bounded_above(tower, window=3)
    assert report.verdict == Verdict.CERTIFIED
    assert report.scope == Scope.TAIL
    assert report.bounds == (4, 6, 8, 10)


def test_windowed_tower_is_bounded_in_window():
    X = sphere(1)
    windowed = Tower.from_levels((X, X), (ChainMap.identity(X),))
    report = is_essentially_bounded_above(windowed)
    assert report.scope == Scope.WINDOW
    assert report.bounds == (1, 1)


def test_ku_is_essentially_constant():
    result = essentially_constant(ku(2))
    assert result.certified
    assert homology(result.value, 2).describe() == "Z"


def test_cpn_tower_is_essentially_constant():
    result = essentially_constant(cpn_tower(2, window=3))
    assert result.certified
    assert result.value == cpn(2)


def test_zero_tower_is_essentially_constant():
    assert essentially_constant(zero_tower(2)).certified


def test_periodic_tail_is_not_constant(tower):
    result = essentially_constant(tower)
    assert result.value is None
    assert not result.certified


def test_torsion_survives_replacement():
    X = em_spectrum(FGAbelianGroup.cyclic(4), 1)
    replacement = postnikov_replacement(constant(X, window=2))
    assert homology(replacement.tower.level(3), 1).describe() == "Z/4"
    assert replacement.tower.level(0).is_zero()


@given(pro_spectra())
@settings(max_examples=20, deadline=None)
def test_replacement_is_bounded_above(X):
    tower = postnikov_replacement(X).tower
    report = is_essentially_bounded_above(tower, window=4)
    assert report.verdict == Verdict.CERTIFIED
    for s, bound in enumerate(report.bounds):
        top = s - config.postnikov_offset
        assert bound is None or bound <= top + 1
        level = tower.level(s)
        assert all(homology(level, k).is_trivial() for k in level.degrees if k > top)


def test_replacement_of_ku_is_bounded_above():
    tower = postnikov_replacement(ku(2)).tower
    assert is_essentially_bounded_above(tower).verdict == Verdict.CERTIFIED
