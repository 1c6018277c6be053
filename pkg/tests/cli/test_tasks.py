"""
Тесты выполнения задач документа.
"""

import json

import pytest

from app.cli import TaskRunner, parse
from app.schemas.v1.instance import TaskName, TaskSchema
from app.schemas.v1.reports import TaskStatus
from app.schemas.v1.verdicts import Scope
from tests.cli.conftest import DOCUMENT

PROJECTIVE_PLANE_E2 = {(p, q) for p in (0, 2, 4) for q in (-2, 0, 2)}


@pytest.fixture(scope="module")
def instance():
    return parse(json.dumps(DOCUMENT))


def run(instance, window=None, **fields):
    return TaskRunner(window).run(instance, 0, TaskSchema(**fields))


def test_homology_of_moore_spectrum(instance):
    result = run(instance, op=TaskName.HOMOLOGY, spectrum="M")
    assert result.status == TaskStatus.OK
    assert result.result["homology"] == {"0": "Z/2", "1": "0"}


def test_lim_of_doubling_tower(instance):
    result = run(instance, op=TaskName.LIM, source="D")
    assert result.verdict == "certified"
    assert result.scope == Scope.TAIL
    assert result.result["lim1"]["status"] == "nonzero"
    assert result.result["lim"]["group"]["rank"] == 0


def test_lim_without_tail_is_unknown(instance):
    result = run(instance, op=TaskName.LIM, source="T")
    assert result.status == TaskStatus.UNKNOWN
    assert result.scope == Scope.WINDOW


def test_zero_map_into_counterexample_is_weak_equivalence(instance):
    result = run(instance, window=4, op=TaskName.WEQ, map="w", n_range=(-1, 2))
    assert result.verdict == "certified"


def test_identity_is_pro_isomorphism(instance):
    result = run(instance, op=TaskName.PROISO, map="id")
    assert result.verdict == "certified"


def test_maps_from_counterexample_vanish(instance):
    result = run(instance, op=TaskName.PROMAPS, source="X", target="K")
    assert result.verdict == "certified"
    assert result.result["group"] == "0"


@pytest.mark.parametrize("degree", [0, 2, 4])
def test_naive_colimit_is_nonzero(instance, degree):
    result = run(instance, op=TaskName.NAIVE, target="KU", degree=degree)
    assert result.verdict == "certified"
    assert result.scope == Scope.TAIL


def test_naive_needs_periodic_family(instance):
    result = run(instance, op=TaskName.NAIVE, target="X")
    assert result.status == TaskStatus.FAILED
    assert result.error["operation"] == "naive"


def test_cofiber_sequence_of_doubling(instance):
    result = run(instance, op=TaskName.LES, map="double")
    assert result.verdict == "certified"
    assert result.scope == Scope.WINDOW


def test_whitehead_for_identity(instance):
    result = run(
        instance, window=2, op=TaskName.WHITEHEAD, map="id", coefficients=["Z"]
    )
    assert result.verdict == "certified"
    assert result.result["agreement"] is True


def test_projective_plane_sequence(instance):
    result = run(
        instance,
        op=TaskName.AHSS,
        source="P",
        target="K",
        p_range=(-1, 5),
        pages=3,
        n_range=(0, 0),
    )
    assert result.verdict == "certified"
    assert [chart.r for chart in result.charts] == [2, 3]
    second = result.charts[0]
    determined = {
        (entry.p, entry.q): entry.label
        for entry in second.entries
        if not entry.indeterminate
    }
    assert set(determined) == PROJECTIVE_PLANE_E2
    assert set(determined.values()) == {"Z"}
    assert second.arrows == []
    assert second.banner.startswith("conditionally-convergent")
    assert result.result["convergence"]["verdict"] == "conditionally-convergent"


def test_run_all_keeps_order(instance):
    first = TaskRunner(max_workers=2).run_all(instance)
    second = TaskRunner(max_workers=1).run_all(instance)
    assert [task.index for task in first.tasks] == [0, 1, 2, 3]
    assert [task.op for task in first.tasks] == [
        "homology",
        "lim",
        "naive",
        "promaps",
    ]
    assert first.to_text() == second.to_text()
