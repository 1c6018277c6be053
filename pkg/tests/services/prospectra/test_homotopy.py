"""
Тесты про-групп гомотопий, сдвигов и встроенных про-спектров.
"""

import pytest

from app.services.v1.abelian import FGAbelianGroup, GroupHom
from app.services.v1.complexes import em_spectrum, homology
from app.services.v1.procat import ProMap, constant, is_pro_isomorphism
from app.services.v1.prospectra import (FORMAL_KU, counterexample, cpn_tower,
                                        ku, naive_cohomology_colimit,
                                        pro_homotopy_group, shift_pro)


@pytest.fixture
def tower():
    return counterexample(width=2, window=4)


def test_constant_eilenberg_maclane(Z):
    X = constant(em_spectrum(Z, 0), window=2)
    assert pro_homotopy_group(X, 0).level(5) == Z
    assert pro_homotopy_group(X, 1).level(5).is_trivial()


@pytest.mark.parametrize("s, expected", [(0, "Z"), (1, "Z"), (2, "Z"), (3, "0")])
def test_counterexample_homotopy_levels(tower, s, expected):
    assert pro_homotopy_group(tower, 4).level(s).describe() == expected


def test_counterexample_homotopy_is_pro_zero(tower):
    group = pro_homotopy_group(tower, 4)
    zero = constant(FGAbelianGroup.zero(), window=2)
    f = ProMap(
        group,
        zero,
        lambda s: GroupHom.zero(group.level(s), FGAbelianGroup.zero()),
        check=False,
    )
    assert is_pro_isomorphism(f).certified


def test_suspension_shifts_homotopy(tower):
    shifted = shift_pro(tower, 1)
    for s in range(3):
        assert pro_homotopy_group(shifted, 5).level(s) == pro_homotopy_group(
            tower, 4
        ).level(s)


def test_double_shift_is_identity(tower):
    assert shift_pro(shift_pro(tower, 1), -1).level(2) == tower.level(2)
    assert shift_pro(tower, 0) is tower


def test_counterexample_levels(tower):
    level = tower.level(1)
    assert list(level.degrees) == [2, 3, 4, 5, 6]
    assert all(homology(level, 2 * k).describe() == "Z" for k in (1, 2, 3))
    assert tower.bond(0).component(2).rows == 1


def test_ku_is_constant_from_twice_the_window():
    tower = ku(2)
    assert not tower.level(1).is_zero()
    assert homology(tower.level(6), 2).describe() == "Z"
    assert homology(tower.level(6), -2).describe() == "Z"
    assert homology(tower.level(2), 2).is_trivial()
    assert tower.level(9) == tower.level(4)


def test_formal_ku_is_not_bounded_above():
    assert not FORMAL_KU.is_bounded_above()
    assert FORMAL_KU.homotopy(-6).describe() == "Z"
    assert FORMAL_KU.homotopy(3).is_trivial()
    assert list(FORMAL_KU.degrees(-3, 4)) == [-2, 0, 2, 4]


def test_cpn_tower():
    X = cpn_tower(2, window=2)
    assert [homology(X.level(4), k).describe() for k in range(5)] == [
        "Z",
        "0",
        "Z",
        "0",
        "Z",
    ]


@pytest.mark.parametrize("degree", [0, 1, 2])
def test_naive_colimit_has_nonzero_germ(degree):
    naive = naive_cohomology_colimit(FORMAL_KU, 2 * degree)
    assert naive.nonzero
    assert naive.witness is not None


def test_naive_colimit_in_odd_degree_vanishes():
    naive = naive_cohomology_colimit(FORMAL_KU, 1)
    assert not naive.nonzero
    assert naive.witness is None
