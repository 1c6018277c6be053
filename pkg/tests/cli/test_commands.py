"""
Тесты командной строки и кодов завершения.
"""

import json

from app.cli import TaskRunner, run_cli
from app.core.exceptions import InvariantViolationError
from app.main import main


def test_parse_without_input(capsys):
    assert run_cli(["parse"]) == 0
    assert capsys.readouterr().out == "{}\n"


def test_parse_is_canonical(document_file, capsys):
    assert run_cli(["parse", "--input", str(document_file)]) == 0
    once = capsys.readouterr().out
    document_file.write_text(once, encoding="utf-8")
    assert run_cli(["parse", "--input", str(document_file)]) == 0
    assert capsys.readouterr().out == once


def test_naive_colimit(capsys):
    assert main(["naive", "KU", "--degree", "2"]) == 0
    document = json.loads(capsys.readouterr().out)
    assert document["engine"] == "prospec"
    assert document["tasks"][0]["verdict"] == "certified"


def test_unknown_command(capsys):
    assert run_cli(["frobnicate"]) == 1
    assert capsys.readouterr().err


def test_missing_operand(capsys):
    assert run_cli(["promaps", "X"]) == 1
    assert "target" in capsys.readouterr().err


def test_missing_input_file(tmp_path, capsys):
    assert run_cli(["parse", "--input", str(tmp_path / "none.json")]) == 1


def test_bad_document_reports_position(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text('{\n  "towers": {\n    "T": {"levels": ["nope"]}\n  }\n}\n')
    assert run_cli(["parse", "--input", str(path)]) == 1
    err = capsys.readouterr().err
    assert err.startswith("3:")
    assert " - ERROR - " not in err


def test_unknown_verdict_and_strict(document_file, capsys):
    args = ["lim", "T", "--input", str(document_file)]
    assert run_cli(args) == 0
    assert run_cli([*args, "--strict"]) == 2


def test_family_is_not_a_tower(document_file, capsys):
    assert run_cli(["promaps", "X", "KU", "--input", str(document_file)]) == 1
    document = json.loads(capsys.readouterr().out)
    assert document["tasks"][0]["status"] == "failed"
    assert document["tasks"][0]["error"]["operation"] == "promaps"


def test_invariant_violation_exit_code(monkeypatch, capsys):
    def broken(self, instance, task):
        raise InvariantViolationError("расхождение", {})

    monkeypatch.setattr(TaskRunner, "_naive", broken)
    assert run_cli(["naive"]) == 3


def test_zero_map_weak_equivalence(document_file, capsys):
    args = ["weq", "0->X", "--input", str(document_file), "--nrange=-1:1"]
    assert run_cli(args) == 0
    document = json.loads(capsys.readouterr().out)
    assert document["tasks"][0]["verdict"] == "certified"


def test_reversed_range_is_usage_error(capsys):
    assert run_cli(["weq", "0->cp1", "--nrange=2:1"]) == 1


def test_svg_charts(document_file, tmp_path, capsys):
    charts = tmp_path / "charts"
    args = [
        "ahss",
        "P",
        "K",
        "--input",
        str(document_file),
        "--prange=-1:5",
        "--pages",
        "3",
        "--format",
        "svg",
        "--charts",
        str(charts),
    ]
    assert run_cli(args) == 0
    assert (charts / "task0-ahss-E2.svg").read_text().startswith("<svg")
    assert (charts / "task0-ahss-E3.svg").exists()


def test_run_builtin_document_is_deterministic(tmp_path, capsys):
    first, second = tmp_path / "a" / "out.json", tmp_path / "b" / "out.json"
    for path in (first, second):
        path.parent.mkdir()
        code = run_cli(
            ["run", "--builtin", "counterexample", "--out", str(path), "--workers", "2"]
        )
        assert code == 0
    assert first.read_bytes() == second.read_bytes()
    assert (first.parent / "task5-ahss-E2.txt").exists()
    ops = [task["op"] for task in json.loads(first.read_text())["tasks"]]
    assert ops[-1] == "ahss"
