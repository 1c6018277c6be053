"""
Тесты сдвигов, сумм, конусов, цилиндров и слоев.
"""

import pytest
from hypothesis import given, settings

from app.core.exceptions import NonCommutingSquareError
from app.services.v1.abelian import FGAbelianGroup, IntMatrix, is_exact_at
from app.services.v1.complexes import (ChainMap, FormalSpectrum, cone, cone_map,
                                       cylinder, direct_sum, direct_sum_map,
                                       em_spectrum, fiber, homology,
                                       induced_map, shift, shift_map, sphere)
from tests.strategies import chain_maps, spectra


def _times(c, degree=0):
    S = sphere(degree)
    return ChainMap.build(S, S, {degree: IntMatrix.from_rows([[c]])})


class TestShift:
    def test_shift_moves_homology(self):
        assert homology(shift(sphere(0), 2), 2).rank == 1

    def test_shift_zero_is_identity(self):
        X = em_spectrum(FGAbelianGroup.cyclic(4), 1)
        assert shift(X, 0) == X

    @settings(max_examples=50, deadline=None)
    @given(spectra())
    def test_shift_round_trip(self, sample):
        X, _ = sample
        assert shift(shift(X, 3), -3) == X

    def test_odd_shift_negates_differential(self):
        X = em_spectrum(FGAbelianGroup.cyclic(2), 0)
        assert shift(X, 1).d(2) == IntMatrix.from_rows([[-2]])
        assert homology(shift(X, 1), 1) == FGAbelianGroup.cyclic(2)

    def test_shift_map(self):
        f = shift_map(_times(3), -1)
        assert f.source == sphere(-1)
        assert f.component(-1) == IntMatrix.from_rows([[3]])


class TestDirectSum:
    def test_sum_of_spheres(self):
        X = direct_sum(sphere(0), sphere(2), sphere(2))
        assert X.rank(2) == 2
        assert homology(X, 2).rank == 2
        assert homology(X, 1).is_trivial()

    def test_sum_of_maps(self):
        f = direct_sum_map(_times(2), _times(3, 2))
        assert induced_map(f, 0).matrix == IntMatrix.from_rows([[2]])
        assert induced_map(f, 2).matrix == IntMatrix.from_rows([[3]])


class TestCone:
    def test_cone_of_identity_is_acyclic(self):
        X = direct_sum(em_spectrum(FGAbelianGroup.cyclic(3), 0), sphere(2))
        C = cone(ChainMap.identity(X)).spectrum
        assert all(homology(C, k).is_trivial() for k in range(-1, 5))

    def test_cone_of_times_two(self):
        C = cone(_times(2)).spectrum
        assert homology(C, 0) == FGAbelianGroup.cyclic(2)
        assert homology(C, 1).is_trivial()

    def test_cone_of_map_to_zero_is_suspension(self):
        X = em_spectrum(FGAbelianGroup.cyclic(2), 0)
        C, _, projection = cone(ChainMap.zero(X, FormalSpectrum.zero()))
        assert C == shift(X, 1)
        assert projection == ChainMap.identity(shift(X, 1))

    def test_fiber_of_map_to_zero(self):
        X = em_spectrum(FGAbelianGroup.free(1), 3)
        F, projection, _ = fiber(ChainMap.zero(X, FormalSpectrum.zero()))
        assert homology(F, 3).rank == 1
        assert induced_map(projection, 3).is_isomorphism()

    def test_cone_map_requires_commuting_square(self):
        f = _times(2)
        with pytest.raises(NonCommutingSquareError):
            cone_map(f, f, _times(1), _times(3))

    def test_cone_map_of_square(self):
        f, g = _times(2), _times(2)
        h = cone_map(f, g, _times(3), _times(3))
        assert induced_map(h, 0).source == FGAbelianGroup.cyclic(2)

    @settings(max_examples=100, deadline=None)
    @given(chain_maps())
    def test_cone_long_exact_sequence(self, f):
        """
        ... → H_k X → H_k Y → H_k C → H_{k-1} X → H_{k-1} Y → ...
        """
        _, inclusion, projection = cone(f)
        for k in range(-3, 5):
            on_x = induced_map(f, k)
            on_y = induced_map(inclusion, k)
            # H_k C → H_k ΣX = H_{k-1} X
            boundary = induced_map(projection, k)
            suspended = induced_map(shift_map(f, 1), k)
            assert is_exact_at(on_x, on_y)
            assert is_exact_at(on_y, boundary)
            assert is_exact_at(boundary, suspended)


class TestCylinder:
    def test_factorization_identities(self):
        f = _times(2)
        _, i, j, p = cylinder(f)
        assert p @ i == f
        assert p @ j == ChainMap.identity(f.target)
        assert i.is_degreewise_injective_split()
        assert p.is_degreewise_surjective()

    @settings(max_examples=50, deadline=None)
    @given(chain_maps())
    def test_target_inclusion_is_equivalence(self, f):
        _, i, j, p = cylinder(f)
        assert p @ i == f
        for k in range(-3, 5):
            assert induced_map(j, k).is_isomorphism()
            assert induced_map(p, k).is_isomorphism()
