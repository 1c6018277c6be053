"""
Тесты существенно поуровневых n-эквивалентностей и π*-слабых эквивалентностей.
"""

from functools import reduce

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from app.schemas.v1.verdicts import Scope, Verdict, WeqRoute, WeqStrategy
from app.services.v1.prospectra import (WeakEquivalenceSearch, counterexample,
                                        ess_levelwise_n_equivalence,
                                        is_pi_weak_equivalence, shift_pro_map,
                                        zero_map)
from tests.strategies import constant_maps, tower_maps


@pytest.fixture
def from_zero():
    return zero_map(counterexample(width=2, window=4))


@pytest.mark.parametrize("n, shift", [(0, 1), (1, 1), (3, 2), (4, 3)])
def test_zero_into_counterexample_needs_shift(from_zero, n, shift):
    certificate = ess_levelwise_n_equivalence(from_zero, n)
    assert certificate.verdict == Verdict.CERTIFIED
    assert certificate.strategy == WeqStrategy.SHIFT
    assert certificate.shift == shift
    assert certificate.scope == Scope.TAIL


def test_zero_into_counterexample_below_zero(from_zero):
    certificate = ess_levelwise_n_equivalence(from_zero, -1)
    assert certificate.verdict == Verdict.CERTIFIED
    assert certificate.strategy == WeqStrategy.IDENTITY
    assert certificate.shift == 0


def test_zero_into_counterexample_is_weak_equivalence(from_zero):
    certificate = is_pi_weak_equivalence(from_zero, (-1, 2))
    assert certificate.certified
    assert certificate.route == WeqRoute.LEVELWISE
    assert certificate.homotopy_verdict == Verdict.CERTIFIED
    assert certificate.for_n(2).shift == 2
    assert certificate.for_n(7) is None


def test_identity_is_weak_equivalence(identity_map):
    certificate = is_pi_weak_equivalence(identity_map, (-2, 2))
    assert certificate.certified
    assert all(c.strategy == WeqStrategy.IDENTITY for c in certificate.levelwise)


def test_doubling_is_not_zero_equivalence(doubling_map):
    certificate = ess_levelwise_n_equivalence(doubling_map, 0)
    assert certificate.verdict == Verdict.REFUTED
    assert "π_0" in certificate.reason


def test_doubling_below_its_degree(doubling_map):
    certificate = ess_levelwise_n_equivalence(doubling_map, -1)
    assert certificate.verdict == Verdict.CERTIFIED
    assert certificate.strategy == WeqStrategy.IDENTITY


def test_doubling_is_not_weak_equivalence(doubling_map):
    certificate = is_pi_weak_equivalence(doubling_map, (-1, 1))
    assert certificate.verdict == Verdict.REFUTED
    assert certificate.homotopy[0].verdict == Verdict.REFUTED
    assert certificate.to_dict()["verdict"] == "refuted"


def test_levelwise_start_reports_levels(from_zero):
    levelwise = WeakEquivalenceSearch(window=4).levelwise_start(from_zero, 3)
    assert levelwise.start == 2
    assert 0 not in levelwise.levels


ROUTE_RANGE = (-1, 2)


def _assert_routes_agree(certificate, n_range):
    # π_k при k = high проверяется только маршрутом через про-группы
    high = n_range[1]
    levelwise = reduce(
        Verdict.meet, (c.verdict for c in certificate.levelwise), Verdict.CERTIFIED
    )
    homotopy = certificate.homotopy_verdict
    refuted = {
        k for k, c in certificate.homotopy.items() if c.verdict == Verdict.REFUTED
    }
    if levelwise == Verdict.CERTIFIED:
        assert refuted <= {high}
    if Verdict.UNKNOWN in (levelwise, homotopy):
        return
    if levelwise == Verdict.CERTIFIED and refuted == {high}:
        return
    assert levelwise == homotopy


def test_zero_into_counterexample_routes_agree(from_zero):
    certificate = WeakEquivalenceSearch(window=4).is_pi_weak_equivalence(
        from_zero, ROUTE_RANGE
    )
    assert certificate.homotopy_verdict == Verdict.CERTIFIED
    _assert_routes_agree(certificate, ROUTE_RANGE)


@given(tower_maps())
@settings(max_examples=50, deadline=None)
def test_routes_agree_on_tower_maps(f):
    certificate = WeakEquivalenceSearch(window=4).is_pi_weak_equivalence(
        f, ROUTE_RANGE
    )
    _assert_routes_agree(certificate, ROUTE_RANGE)
    if certificate.route == WeqRoute.LEVELWISE:
        assert certificate.verdict != Verdict.UNKNOWN


@given(constant_maps(), st.integers(-2, 2))
@settings(max_examples=30, deadline=None)
def test_suspension_keeps_weak_equivalence_verdict(f, m):
    search = WeakEquivalenceSearch(window=1)
    low, high = ROUTE_RANGE
    before = search.is_pi_weak_equivalence(f, ROUTE_RANGE)
    after = search.is_pi_weak_equivalence(shift_pro_map(f, m), (low + m, high + m))
    assert after.verdict == before.verdict
