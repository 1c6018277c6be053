"""
Тесты групп, гомоморфизмов и универсальных конструкций.
"""

from itertools import product
from math import gcd

import pytest
from hypothesis import given, settings

from app.core.exceptions import IllDefinedHomError, NotComposableError
from app.services.v1.abelian import (FGAbelianGroup, GroupHom, HomGroup,
                                     IntMatrix, cokernel,
                                     group_from_presentation, hom_group, image,
                                     is_exact_at, kernel)
from tests.strategies import groups, homs


def _brute_force_order(presentation: IntMatrix, box: int) -> int:
    """
    Число классов Z^n / соотношения среди векторов с координатами в [0, box).
    """
    group = FGAbelianGroup(presentation)
    seen = {
        group.canonical(v)
        for v in product(range(box), repeat=presentation.cols)
    }
    return len(seen)


class TestPresentations:
    def test_cyclic(self):
        group = group_from_presentation(IntMatrix.from_rows([[2]]))
        assert group.invariants == (0, (2,))

    def test_free_without_relations(self):
        group = group_from_presentation(IntMatrix.zeros(0, 3))
        assert group.describe() == "Z^3"

    def test_invariant_factors_normalize(self):
        group = group_from_presentation(IntMatrix.from_rows([[2, 0], [0, 3]]))
        assert group.torsion == (6,)
        assert group == FGAbelianGroup.cyclic(6)
        assert _brute_force_order(group.presentation, 6) == 6

    def test_zero_group(self):
        assert FGAbelianGroup.zero().is_trivial()
        assert FGAbelianGroup.cyclic(1).is_trivial()

    @settings(max_examples=100, deadline=None)
    @given(groups())
    def test_canonical_round_trip(self, group):
        standard, to_standard, from_standard = group.minimize()
        assert standard == group
        assert (to_standard @ from_standard) == GroupHom.identity(standard)
        assert (from_standard @ to_standard) == GroupHom.identity(group)


class TestHomomorphisms:
    def test_ill_defined_rejected(self, Z):
        Z2 = FGAbelianGroup.cyclic(2)
        with pytest.raises(IllDefinedHomError):
            GroupHom(Z2, Z, IntMatrix.from_rows([[1]]))

    def test_not_composable(self, Z):
        Z2 = FGAbelianGroup.cyclic(2)
        f = GroupHom(Z, Z2, IntMatrix.from_rows([[1]]))
        with pytest.raises(NotComposableError):
            f @ f

    def test_times_two(self, Z, times_two):
        assert kernel(times_two).group.is_trivial()
        assert cokernel(times_two).group == FGAbelianGroup.cyclic(2)
        assert image(times_two).group == Z

    def test_zero_map(self, Z):
        zero = GroupHom.zero(Z, Z)
        assert kernel(zero).group == Z
        assert image(zero).group.is_trivial()

    def test_row_map(self, Z):
        h = GroupHom(FGAbelianGroup.free(2), Z, IntMatrix.from_rows([[1, 2]]))
        assert kernel(h).group == Z
        assert cokernel(h).group.is_trivial()

    def test_inverse(self):
        G = FGAbelianGroup.free(2)
        h = GroupHom(G, G, IntMatrix.from_rows([[2, 1], [1, 1]]))
        assert h.is_isomorphism()
        assert h @ h.inverse() == GroupHom.identity(G)


class TestExactness:
    def test_identity_exact(self, Z):
        zero = GroupHom.zero(FGAbelianGroup.zero(), Z)
        assert is_exact_at(zero, GroupHom.identity(Z))

    def test_times_two_then_projection(self, Z, times_two):
        Z2 = FGAbelianGroup.cyclic(2)
        projection = GroupHom(Z, Z2, IntMatrix.from_rows([[1]]))
        assert is_exact_at(times_two, projection)

    def test_times_four_not_exact(self, Z):
        Z2 = FGAbelianGroup.cyclic(2)
        times_four = GroupHom(Z, Z, IntMatrix.from_rows([[4]]))
        projection = GroupHom(Z, Z2, IntMatrix.from_rows([[1]]))
        assert not is_exact_at(times_four, projection)

    @settings(max_examples=100, deadline=None)
    @given(homs())
    def test_kernel_inclusion_is_exact(self, h):
        assert is_exact_at(kernel(h).inclusion, h)
        assert (cokernel(h).projection @ h).is_zero()

    @settings(max_examples=100, deadline=None)
    @given(homs())
    def test_image_factorization(self, h):
        result = image(h)
        assert result.inclusion @ result.projection == h
        assert result.inclusion.is_injective()
        assert result.projection.is_surjective()


class TestHomGroups:
    def test_examples(self, Z):
        assert hom_group(Z, Z) == Z
        assert hom_group(FGAbelianGroup.cyclic(2), Z).is_trivial()
        assert hom_group(
            FGAbelianGroup.cyclic(4), FGAbelianGroup.cyclic(6)
        ) == FGAbelianGroup.cyclic(2)

    @pytest.mark.parametrize("m, n", [(2, 4), (4, 6), (3, 5), (6, 9), (12, 8)])
    def test_cyclic_gcd(self, m, n):
        expected = FGAbelianGroup.cyclic(gcd(m, n))
        assert hom_group(FGAbelianGroup.cyclic(m), FGAbelianGroup.cyclic(n)) == expected

    def test_element_coordinates(self):
        module = HomGroup(FGAbelianGroup.cyclic(4), FGAbelianGroup.cyclic(6))
        generator = module.element((1,))
        assert not generator.is_zero()
        assert module.coordinates(generator) == (1,)
        assert module.coordinates(generator + generator) == (0,)

    def test_precompose(self, Z, times_two):
        module = HomGroup(Z, Z)
        _, induced = module.precompose(times_two)
        assert cokernel(induced).group == FGAbelianGroup.cyclic(2)
