"""
Тесты формальных спектров, цепных отображений и гомотопий.
"""

import pytest

from app.core.exceptions import (ChainMapError, DifferentialError,
                                 HomotopyError, NotComposableError)
from app.services.v1.abelian import FGAbelianGroup, IntMatrix
from app.services.v1.complexes import (ChainHomotopy, ChainMap, FormalSpectrum,
                                       em_spectrum, sphere)


def _m(rows):
    return IntMatrix.from_rows(rows)


@pytest.fixture
def mod_two():
    return FormalSpectrum.build({1: 1, 0: 1}, {1: _m([[2]])})


class TestFormalSpectrum:
    def test_build_and_range(self, mod_two):
        assert (mod_two.lo, mod_two.hi) == (0, 1)
        assert mod_two.rank(5) == 0
        assert mod_two.d(1) == _m([[2]])
        assert mod_two.d(0).shape == (0, 1)

    def test_trims_zero_cells(self):
        X = FormalSpectrum.build({-3: 0, 2: 1, 7: 0})
        assert (X.lo, X.hi) == (2, 2)
        assert X == sphere(2)

    def test_zero_spectrum(self):
        X = FormalSpectrum.build({0: 0})
        assert X.is_zero()
        assert list(X.degrees) == []

    def test_d_squared_rejected_with_degree(self):
        # Z →1 Z →1 Z в степенях 2 → 1 → 0: d_1·d_2 = 1 ≠ 0
        with pytest.raises(DifferentialError) as error:
            FormalSpectrum.build({0: 1, 1: 1, 2: 1}, {1: _m([[1]]), 2: _m([[1]])})
        assert error.value.degree == 2

    def test_shape_mismatch_rejected(self):
        with pytest.raises(DifferentialError):
            FormalSpectrum.build({0: 1, 1: 2}, {1: _m([[1, 0], [0, 1]])})

    def test_name_ignored_in_equality(self, mod_two):
        assert mod_two.named("M(2)") == mod_two
        assert hash(mod_two.named("M(2)")) == hash(mod_two)

    def test_to_dict(self, mod_two):
        assert mod_two.to_dict() == {
            "degrees": {"0": 1, "1": 1},
            "diff": {"1": [[2]]},
        }


class TestChainMap:
    def test_identity_and_zero(self, mod_two):
        identity = ChainMap.identity(mod_two)
        assert identity @ identity == identity
        assert ChainMap.zero(mod_two, mod_two).is_zero()
        assert (identity - identity).is_zero()

    def test_non_commuting_rejected(self, mod_two):
        Z0 = sphere(0)
        # Z0 → M(2): 1 ↦ 1 коммутирует, обратное M(2) → Z0 с 1 на клетке 0 нет
        ChainMap.build(Z0, mod_two, {0: _m([[1]])})
        with pytest.raises(ChainMapError) as error:
            ChainMap.build(mod_two, Z0, {0: _m([[1]])})
        assert error.value.degree == 1

    def test_component_shape_checked(self, mod_two):
        with pytest.raises(ChainMapError):
            ChainMap.build(mod_two, mod_two, {0: _m([[1, 0]])})

    def test_compose_requires_matching_spectra(self, mod_two):
        Z0 = sphere(0)
        f = ChainMap.identity(Z0)
        g = ChainMap.identity(mod_two)
        with pytest.raises(NotComposableError):
            g @ f

    def test_arithmetic(self):
        Z0 = sphere(0)
        two = ChainMap.build(Z0, Z0, {0: _m([[2]])})
        three = ChainMap.build(Z0, Z0, {0: _m([[3]])})
        assert (two + three).component(0) == _m([[5]])
        assert (two @ three).component(0) == _m([[6]])
        assert (-two).component(0) == _m([[-2]])

    def test_split_injection_and_surjection(self):
        Z0 = sphere(0)
        two = ChainMap.build(Z0, Z0, {0: _m([[2]])})
        assert ChainMap.identity(Z0).is_degreewise_injective_split()
        assert not two.is_degreewise_injective_split()
        assert not two.is_degreewise_surjective()


class TestChainHomotopy:
    def test_null_homotopy_of_two_on_mod_two_bottom(self, mod_two):
        # ×2 на M(2) гомотопно нулю: H_0 = 1 на клетке 0, H_0 d = 2 на клетке 1
        two = ChainMap.build(mod_two, mod_two, {0: _m([[2]]), 1: _m([[2]])})
        zero = ChainMap.zero(mod_two, mod_two)
        ChainHomotopy(two, zero, ((0, _m([[1]])),))

    def test_wrong_homotopy_rejected(self, mod_two):
        two = ChainMap.build(mod_two, mod_two, {0: _m([[2]]), 1: _m([[2]])})
        zero = ChainMap.zero(mod_two, mod_two)
        with pytest.raises(HomotopyError):
            ChainHomotopy(two, zero, ((0, _m([[3]])),))

    def test_em_spectrum_minimal_resolution(self):
        X = em_spectrum(FGAbelianGroup.cyclic(2), 0)
        assert X == FormalSpectrum.build({1: 1, 0: 1}, {1: _m([[2]])})
