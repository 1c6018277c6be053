"""
Тесты башен сечений и связных накрытий цели.
"""

from hypothesis import given, settings

from app.schemas.v1.verdicts import TailKind, Verdict
from app.services.v1.ahss import (cofiber_checks, connective_tower,
                                  cover_diagonal, cover_weak_equivalence,
                                  postnikov_tower, section_tail)
from app.services.v1.complexes import cpn, em_spectrum, sphere
from app.services.v1.procat import constant
from app.services.v1.prospectra import counterexample, ku
from tests.strategies import spectra


def test_cover_cofibers_of_projective_plane():
    checks = cofiber_checks(constant(cpn(2), 1), (-5, 1), window=1)
    assert checks
    assert all(check.passed for check in checks)
    nonzero = {check.q for check in checks if not check.group.is_trivial()}
    assert nonzero == {0, -2, -4}


def test_cover_cofibers_of_truncated_ku():
    checks = cofiber_checks(ku(2), (-3, 3), window=1)
    assert all(check.passed for check in checks)
    assert checks[0].to_dict()["passed"] is True


@settings(max_examples=25, deadline=None)
@given(spectra())
def test_cover_cofibers_are_eilenberg_maclane(sample):
    X, _ = sample
    checks = cofiber_checks(constant(X, 1), (-3, 2), window=1)
    assert all(check.passed for check in checks)


def test_section_tail_of_counterexample():
    X = counterexample(width=2, window=3)
    below = section_tail(X, 3, below=True)
    assert below.kind == TailKind.EVENTUALLY_ZERO
    assert below.start == 2
    above = section_tail(X, 3, below=False)
    assert above.kind == TailKind.PERIODIC_SHIFT
    assert (above.start, above.period, above.shift) == (2, 1, 2)


def test_section_tail_keeps_constant_tail():
    Y = constant(sphere(0), 2)
    assert section_tail(Y, 0, below=True) is Y.tail


def test_postnikov_tower_of_eilenberg_maclane(Z):
    HZ = em_spectrum(Z, 0)
    family = postnikov_tower(constant(HZ, 2), (-2, 2))
    assert family.stage(-2).level(1) == HZ
    assert family.stage(2).level(1).is_zero()
    assert set(family.maps) == {-2, -1, 0, 1, 2}
    assert family.to_dict()["q_range"] == [-2, 2]


def test_connective_tower_maps_are_inclusions(Z):
    HZ = em_spectrum(Z, 0)
    family = connective_tower(constant(HZ, 2), (-1, 1))
    assert family.maps[0].source is family.stage(0)
    assert family.maps[0].component(0).target == family.stage(1).level(0)


def test_cover_diagonal_of_constant_sphere_is_zero():
    B = cover_diagonal(constant(sphere(0), 2))
    assert B.level(3).is_zero()
    assert B.tail.kind == TailKind.EVENTUALLY_ZERO


def test_point_to_cover_limit_is_weak_equivalence():
    certificate = cover_weak_equivalence(constant(cpn(1), 2), (-1, 2), window=2)
    assert certificate.verdict == Verdict.CERTIFIED


def test_point_to_cover_limit_of_counterexample():
    X = counterexample(width=2, window=3)
    assert cover_weak_equivalence(X, (-1, 1), window=3).verdict == Verdict.CERTIFIED


@settings(max_examples=10, deadline=None)
@given(spectra(lo=-1, hi=1, max_pieces=2))
def test_cover_limit_is_weakly_trivial(sample):
    X, _ = sample
    certificate = cover_weak_equivalence(constant(X, 2), (-1, 1), window=2)
    assert certificate.verdict == Verdict.CERTIFIED
