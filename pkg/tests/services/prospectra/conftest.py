import pytest

from app.services.v1.abelian import IntMatrix
from app.services.v1.complexes import ChainMap, sphere
from tests.strategies import constant_map


@pytest.fixture
def doubling_map():
    S = sphere(0)
    return constant_map(ChainMap.build(S, S, {0: IntMatrix.from_rows([[2]])}))


@pytest.fixture
def identity_map():
    return constant_map(ChainMap.identity(sphere(0)))
