"""
Тесты спектральной последовательности, сходимости и предельного члена.
"""

import pytest

from app.core.exceptions import NonConstantTargetError
from app.schemas.v1.verdicts import ConvergenceVerdict, Verdict
from app.services.v1.ahss import (SpectralSequence, build_exact_couple,
                                  compare_abutment, convergence_report,
                                  e2_identification, pages, stencil,
                                  valid_window)
from app.services.v1.complexes import ChainMap, sphere
from app.services.v1.procat import Tower
from app.services.v1.prospectra import counterexample, cpn_tower, ku

PROJECTIVE_PLANE_E2 = {(p, q) for p in (0, 2, 4) for q in (-2, 0, 2)}


@pytest.fixture(scope="module")
def target():
    return ku(2)


@pytest.fixture(scope="module")
def plane():
    return cpn_tower(2, window=2)


@pytest.fixture(scope="module")
def tower():
    return counterexample(width=2, window=3)


@pytest.fixture(scope="module")
def plane_couple(plane, target):
    return build_exact_couple(plane, target, p_range=(-1, 5))


def test_second_page_for_counterexample_vanishes(tower, target):
    result = pages(tower, target, r_max=2, p_range=(0, 3))
    assert result[0].groups.nonzero() == {}
    assert result[0].groups.indeterminate == []


def test_second_page_of_projective_plane(plane_couple):
    nonzero = plane_couple.E.nonzero()
    assert set(nonzero) == PROJECTIVE_PLANE_E2
    assert all(group.describe() == "Z" for group in nonzero.values())


def test_projective_plane_couple_is_exact(plane_couple):
    assert plane_couple.exact
    assert plane_couple.squares_vanish()


def test_e2_matches_ordinary_cohomology(plane, target):
    checks = e2_identification(plane, target, p_range=(-1, 5), q_range=(-3, 3))
    assert checks
    assert all(check.matches for check in checks)


def test_sparse_page_degenerates(plane, target):
    result = pages(plane, target, r_max=3, p_range=(-1, 5))
    second, third = result
    assert second.degenerate
    assert third.r == 3
    assert third.degree == (3, -2)
    assert third.groups[(2, 0)].describe() == "Z"


def test_stencil_and_valid_window():
    assert stencil(3) == (2, 1)
    assert valid_window((0, 4, -2, 2), 3) == (2, 2, -1, 1)
    assert valid_window((0, 1, 0, 1), 4) is None


def test_non_constant_target_is_rejected(plane, tower):
    with pytest.raises(NonConstantTargetError):
        build_exact_couple(plane, tower, p_range=(0, 1))


def test_default_q_window_follows_target(target):
    service = SpectralSequence()
    assert service.q_window(service.target_value(target)) == (-3, 3)


def test_counterexample_converges(tower, target):
    report = convergence_report(tower, target, (0, 1))
    assert report.verdict == ConvergenceVerdict.CONDITIONALLY_CONVERGENT
    assert report.cases == {1: Verdict.CERTIFIED, 2: Verdict.CERTIFIED}
    assert report.case == 1
    assert report.lim_vanishes == Verdict.CERTIFIED
    assert report.lim1_vanishes == Verdict.CERTIFIED


def test_projective_plane_converges_by_first_case(plane, target):
    report = convergence_report(plane, target, (0, 0))
    assert report.cases[1] == Verdict.CERTIFIED
    assert report.convergent
    assert report.to_dict()["verdict"] == "conditionally-convergent"


def test_windowed_source_is_not_established(target):
    S = sphere(0)
    windowed = Tower.from_levels((S, S), (ChainMap.identity(S),))
    report = convergence_report(windowed, target, (0, 0))
    assert report.verdict == ConvergenceVerdict.NOT_ESTABLISHED
    assert report.lim_vanishes == Verdict.UNKNOWN
    assert report.cases[1] == Verdict.UNKNOWN


@pytest.mark.parametrize("n, rank", [(0, 2), (1, 0)])
def test_abutment_of_projective_plane(plane, target, n, rank):
    report = compare_abutment(plane, target, n, r_max=2)
    assert report.verdict == Verdict.CERTIFIED
    assert report.stabilized
    assert report.oracle.rank == rank
    assert report.colimit == report.oracle
    assert sum(group.rank for group in report.diagonal.values()) == rank


def test_abutment_of_counterexample_is_zero(tower, target):
    report = compare_abutment(tower, target, 0, r_max=2)
    assert report.verdict == Verdict.CERTIFIED
    assert report.oracle.is_trivial()
    assert report.colimit.is_trivial()
    assert report.to_dict()["diagonal"] == {}
