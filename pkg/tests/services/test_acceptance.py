"""
Прогоны в полном окне: контрпример против ku(12) и CP^N против ku(12).

Помечены slow; быстрый прогон: pytest -m "not slow".
"""

import pytest

from app.schemas.v1.verdicts import Lim1Status, Verdict
from app.services.v1.ahss import SpectralSequence
from app.services.v1.prospectra import (FORMAL_KU, counterexample, cpn_tower,
                                        is_pi_weak_equivalence, ku,
                                        naive_cohomology_colimit,
                                        ordinary_cohomology, pro_maps,
                                        zero_map)

pytestmark = pytest.mark.slow

KU_WINDOW = 12


@pytest.fixture(scope="module")
def target():
    return ku(KU_WINDOW)


@pytest.fixture(scope="module")
def tower():
    return counterexample(window=12)


@pytest.mark.parametrize("p", range(-20, 21))
def test_counterexample_has_no_ordinary_cohomology(tower, Z, p):
    assert ordinary_cohomology(tower, Z, p).group.is_trivial()


@pytest.mark.parametrize("degree", [-4, 0, 2, 6])
def test_naive_k_theory_colimit_survives(degree):
    naive = naive_cohomology_colimit(FORMAL_KU, degree)
    assert naive.nonzero
    assert naive.witness is not None


def test_pro_k_theory_of_counterexample_vanishes(tower, target):
    result = pro_maps(tower, target, 0)
    assert result.group.describe() == "0"
    assert result.lim1 == Lim1Status.ZERO


def test_counterexample_is_weakly_trivial(tower):
    certificate = is_pi_weak_equivalence(zero_map(tower))
    assert certificate.verdict == Verdict.CERTIFIED


@pytest.mark.parametrize("N", range(1, 6))
def test_projective_space_against_k_theory(N, target):
    X = cpn_tower(N)
    service = SpectralSequence(p_range=(-1, 2 * N + 1))
    q_lo, q_hi = service.q_window(service.target_value(target))

    second = service.pages(X, target, r_max=2)[0]
    expected = {
        (p, q)
        for p in range(0, 2 * N + 1, 2)
        for q in range(q_lo, q_hi + 1)
        if q % 2 == 0
    }
    nonzero = second.groups.nonzero()
    assert set(nonzero) == expected
    assert all(group.describe() == "Z" for group in nonzero.values())
    assert second.degenerate

    convergence = service.convergence_report(X, target, (0, 0))
    assert convergence.case == 1
    assert convergence.convergent

    abutment = service.compare_abutment(X, target, 0, r_max=2)
    assert abutment.verdict == Verdict.CERTIFIED
    assert abutment.oracle.rank == N + 1
    assert abutment.colimit == abutment.oracle
