"""
Тесты постниковских усечений и связных накрытий.
"""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from app.services.v1.abelian import FGAbelianGroup, is_exact_at
from app.services.v1.complexes import (ChainMap, connected_cover,
                                       cover_inclusion, cover_map, direct_sum,
                                       em_spectrum, homology, induced_map,
                                       postnikov, postnikov_map, sphere)
from tests.strategies import chain_maps, spectra


def _formal_ku(width):
    return direct_sum(*(sphere(2 * j) for j in range(-width, width + 1)))


@pytest.mark.parametrize("k, n", [(0, 0), (2, 1), (2, 2), (-1, 3)])
def test_postnikov_of_em(k, n):
    A = FGAbelianGroup.from_invariants(1, (2,))
    X = em_spectrum(A, k)
    P, _ = postnikov(X, n)
    if k <= n:
        assert P == X
    else:
        assert all(homology(P, j).is_trivial() for j in range(k - 2, k + 3))


def test_postnikov_kills_high_cells():
    X = sphere(5)
    P, projection = postnikov(X, 3)
    assert P.is_zero()
    assert projection.target.is_zero()


def test_postnikov_of_sum():
    X = direct_sum(sphere(0), sphere(2))
    P, _ = postnikov(X, 1)
    assert homology(P, 0).rank == 1
    assert homology(P, 2).is_trivial()


@settings(max_examples=100, deadline=None)
@given(spectra(), st.integers(-2, 3))
def test_postnikov_homology(sample, n):
    X, expected = sample
    P, projection = postnikov(X, n)
    zero = FGAbelianGroup.zero()
    for k in range(-3, 6):
        if k <= n:
            assert homology(P, k) == expected.get(k, zero)
            assert induced_map(projection, k).is_isomorphism()
        else:
            assert homology(P, k).is_trivial()


@settings(max_examples=100, deadline=None)
@given(spectra(), st.integers(-2, 3))
def test_connected_cover_homology(sample, n):
    X, expected = sample
    C, inclusion = connected_cover(X, n)
    zero = FGAbelianGroup.zero()
    for k in range(-3, 6):
        if k > n:
            assert homology(C, k) == expected.get(k, zero)
            assert induced_map(inclusion, k).is_isomorphism()
        else:
            assert homology(C, k).is_trivial()


@settings(max_examples=50, deadline=None)
@given(spectra(), st.integers(-2, 3))
def test_cover_postnikov_sequence_exact(sample, n):
    X, _ = sample
    _, inclusion = connected_cover(X, n)
    _, projection = postnikov(X, n)
    for k in range(-3, 6):
        assert is_exact_at(induced_map(inclusion, k), induced_map(projection, k))


def test_formal_ku_cover_keeps_positive_degrees():
    C, _ = connected_cover(_formal_ku(3), 0)
    assert [k for k in range(-8, 9) if not homology(C, k).is_trivial()] == [2, 4, 6]


def test_cover_inclusion_between_covers():
    X = _formal_ku(2)
    j = cover_inclusion(X, 2, -1)
    assert induced_map(j, 4).is_isomorphism()
    assert homology(j.source, 2).is_trivial()
    assert homology(j.target, 0).rank == 1


@settings(max_examples=40, deadline=None)
@given(chain_maps(), st.integers(-2, 3))
def test_truncation_functoriality(f, n):
    _, source_projection = postnikov(f.source, n)
    _, target_projection = postnikov(f.target, n)
    assert postnikov_map(f, n) @ source_projection == target_projection @ f
    _, source_inclusion = connected_cover(f.source, n)
    _, target_inclusion = connected_cover(f.target, n)
    assert target_inclusion @ cover_map(f, n) == f @ source_inclusion


def test_postnikov_map_to_lower_stage():
    X = _formal_ku(2)
    step = postnikov_map(ChainMap.identity(X), 2, 0)
    assert homology(step.source, 2).rank == 1
    assert homology(step.target, 2).is_trivial()
    assert induced_map(step, 0).is_isomorphism()
