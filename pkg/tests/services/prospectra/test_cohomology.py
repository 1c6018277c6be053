"""
Тесты [X, Y]^r_pro, обычных когомологий и проверки Уайтхеда.
"""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from app.core.exceptions import NotBoundedAboveError
from app.schemas.v1.verdicts import Lim1Status, Verdict
from app.services.v1.abelian import FGAbelianGroup
from app.services.v1.complexes import (ChainMap, FormalSpectrum, em_spectrum,
                                       is_co_n_equivalence, is_n_equivalence)
from app.services.v1.procat import constant
from app.services.v1.prospectra import (FORMAL_KU, WhiteheadCheck,
                                        cohomology_map, counterexample,
                                        cpn_tower, ku, maps_to_constant,
                                        ordinary_cohomology, pro_maps,
                                        whitehead_check, zero_map)
from tests.strategies import pro_spectra, spectra, tower_maps


@pytest.fixture
def tower():
    return counterexample(width=2, window=4)


def test_maps_from_counterexample_to_ku_vanish(tower):
    result = pro_maps(tower, ku(2))
    assert result.group.describe() == "0"
    assert result.lim1 == Lim1Status.ZERO
    assert result.determined


def test_k_theory_of_projective_plane():
    result = pro_maps(cpn_tower(2, window=2), ku(4), 0)
    assert result.group.rank == 3
    assert result.group.torsion == ()
    assert result.to_dict()["determined"] is True


def test_maps_between_constant_eilenberg_maclane(Z):
    HZ = constant(em_spectrum(Z, 0), window=2)
    assert pro_maps(HZ, HZ).group == Z


@pytest.mark.parametrize("r, expected", [(0, "Z/3"), (1, "0"), (2, "Z/3")])
def test_cohomology_of_projective_plane(r, expected):
    Z3 = FGAbelianGroup.cyclic(3)
    assert ordinary_cohomology(cpn_tower(2, window=2), Z3, r).group.describe() == (
        expected
    )


@pytest.mark.parametrize("r", [0, 2, 4, 6])
def test_cohomology_of_counterexample_vanishes(tower, Z, r):
    assert ordinary_cohomology(tower, Z, r).group.is_trivial()


def test_maps_to_constant(Z):
    HZ = em_spectrum(Z, 0)
    assert maps_to_constant(cpn_tower(2, window=2), HZ, 2).group == Z


def test_maps_to_unbounded_family_are_rejected(tower):
    with pytest.raises(NotBoundedAboveError):
        maps_to_constant(tower, FORMAL_KU, 0)


def test_doubling_on_cohomology(doubling_map, Z):
    induced = cohomology_map(doubling_map, Z, 0).hom
    assert not induced.is_isomorphism()
    mod_two = cohomology_map(doubling_map, FGAbelianGroup.cyclic(2), 0).hom
    assert mod_two.is_zero()


def test_identity_on_cohomology(identity_map, Z):
    assert cohomology_map(identity_map, Z, 0).hom.is_isomorphism()


def test_whitehead_for_identity(identity_map, Z):
    report = whitehead_check(identity_map, [Z], window=2)
    assert report.hypothesis.verdict == Verdict.CERTIFIED
    assert report.weak_equivalence.certified
    assert report.cohomology_verdict == Verdict.CERTIFIED
    assert report.agreement is True


def test_whitehead_for_doubling(doubling_map, Z):
    report = WhiteheadCheck(window=2).check(
        doubling_map, [Z, FGAbelianGroup.cyclic(2)], degrees=(-1, 1)
    )
    assert report.weak_equivalence.verdict == Verdict.REFUTED
    assert report.cohomology_verdict == Verdict.REFUTED
    assert report.cohomology[("Z", 0)] is False
    assert report.agreement is True


def test_whitehead_for_zero_into_counterexample(tower, Z):
    report = WhiteheadCheck(window=4).check(zero_map(tower), [Z], degrees=(0, 4))
    assert report.weak_equivalence.certified
    assert report.cohomology_verdict == Verdict.CERTIFIED
    assert report.agreement is True
    assert "hypothesis" in report.to_dict()


def test_torsion_coefficients_alone_are_inconclusive(identity_map):
    report = whitehead_check(identity_map, [FGAbelianGroup.cyclic(2)], window=2)
    assert report.cohomology_verdict == Verdict.UNKNOWN
    assert report.agreement is None


WHITEHEAD_COEFFICIENTS = [
    FGAbelianGroup.free(1),
    FGAbelianGroup.cyclic(2),
    FGAbelianGroup.cyclic(3),
]


@given(pro_spectra(), spectra(max_pieces=3), st.integers(-1, 1))
@settings(max_examples=30, deadline=None)
def test_milnor_sequence_matches_colimit_formula(X, target, r):
    Y, _ = target
    result = pro_maps(X, constant(Y, 1), r)
    assert result.lim1 == Lim1Status.ZERO
    assert result.group is not None
    assert result.group == maps_to_constant(X, Y, r).group


@given(st.integers(-1, 1), st.data())
@settings(max_examples=30, deadline=None)
def test_connected_source_into_coconnected_target(n, data):
    X, _ = data.draw(spectra(lo=n + 1, hi=n + 2, max_pieces=2))
    Y, _ = data.draw(spectra(lo=n - 3, hi=n - 1, max_pieces=2))
    zero = FormalSpectrum.zero()
    assert is_n_equivalence(ChainMap.zero(zero, X), n)
    assert is_co_n_equivalence(ChainMap.zero(Y, zero), n)
    assert pro_maps(constant(X, 1), constant(Y, 1), 0).group.is_trivial()


@given(spectra(lo=-4, hi=-2, max_pieces=2))
@settings(max_examples=15, deadline=None)
def test_counterexample_into_coconnected_target(sample):
    Y, _ = sample
    tower = counterexample(width=2, window=3)
    assert pro_maps(tower, constant(Y, 1), 0).group.is_trivial()


@given(tower_maps())
@settings(max_examples=50, deadline=None)
def test_whitehead_never_disagrees(f):
    report = WhiteheadCheck(window=4).check(f, WHITEHEAD_COEFFICIENTS)
    assert report.agreement is not False
    if report.hypothesis.verdict == Verdict.CERTIFIED:
        assert report.weak_equivalence is not None
