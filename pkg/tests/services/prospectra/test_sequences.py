"""
Тесты длинных точных последовательностей конуса и слоя.
"""

from hypothesis import given, settings

from app.schemas.v1.verdicts import SequenceKind
from app.services.v1.abelian import FGAbelianGroup
from app.services.v1.complexes import em_spectrum, homology, sphere
from app.services.v1.prospectra import (ExactSequences, cofiber_les,
                                        counterexample, fiber_les, regrade,
                                        zero_map)
from tests.strategies import constant_maps, spectra


def test_cofiber_of_identity_is_contractible(identity_map):
    sequence = cofiber_les(identity_map)
    assert sequence.kind == SequenceKind.COFIBER
    assert sequence.exact
    assert all(
        homology(sequence.third.level(1), k).is_trivial() for k in range(-1, 3)
    )


def test_fiber_of_identity(identity_map):
    sequence = fiber_les(identity_map)
    assert sequence.kind == SequenceKind.FIBER
    assert sequence.exact
    assert sequence.failures == []


def test_cofiber_of_doubling(doubling_map):
    sequence = cofiber_les(doubling_map)
    assert homology(sequence.third.level(0), 0).describe() == "Z/2"
    assert sequence.exact
    assert sequence.to_dict()["kind"] == "cofiber"


def test_fiber_of_doubling(doubling_map):
    sequence = fiber_les(doubling_map)
    assert homology(sequence.third.level(2), -1).describe() == "Z/2"
    assert sequence.exact


def test_sequence_runs_through_all_degrees(doubling_map):
    sequence = cofiber_les(doubling_map)
    low, high = sequence.degrees
    assert len(sequence.maps) == 3 * (high - low + 1)
    assert [f.name for f in sequence.maps[2::3]] == [
        f"∂_{k}" for k in range(high, low - 1, -1)
    ]


def test_cofiber_of_zero_into_counterexample():
    sequence = ExactSequences(window=3).cofiber_les(
        zero_map(counterexample(width=2, window=4))
    )
    assert sequence.exact
    assert homology(sequence.third.level(1), 4).describe() == "Z"


def test_regrade_is_isomorphism():
    X = em_spectrum(FGAbelianGroup.cyclic(3), 1)
    assert regrade(X, 1, 1).is_isomorphism()
    assert regrade(X, -2, 1).target.describe() == "Z/3"
    assert regrade(sphere(0), 1, 0).is_isomorphism()


@given(constant_maps())
@settings(max_examples=30, deadline=None)
def test_cofiber_sequence_is_exact(f):
    assert cofiber_les(f, window=1).exact


@given(constant_maps())
@settings(max_examples=30, deadline=None)
def test_fiber_sequence_is_exact(f):
    assert fiber_les(f, window=1).exact


@given(spectra())
@settings(max_examples=30, deadline=None)
def test_regrade_preserves_homology(data):
    X, expected = data
    for k, group in expected.items():
        shifted = regrade(X, 1, k)
        assert shifted.is_isomorphism()
        assert shifted.target.describe() == group.describe()
