import json

import pytest

DOCUMENT = {
    "groups": {"A": {"rank": 1}},
    "spectra": {
        "S": {"degrees": {"0": 1}},
        "M": {"degrees": {"0": 1, "1": 1}, "diff": {"1": [[2]]}},
    },
    "towers": {
        "X": {"builtin": "counterexample", "width": 2, "window": 4},
        "K": {"builtin": "ku", "window": 2},
        "P": {"builtin": "cpn", "n": 2, "window": 2},
        "C": {"builtin": "constant", "of": "S", "window": 2},
        "D": {
            "levels": ["A", "A"],
            "bonds": [[[2]]],
            "tail": {"kind": "periodic-shift", "start": 0, "period": 1},
        },
        "T": {"levels": ["A", "A"], "bonds": [[[2]]]},
    },
    "maps": {
        "w": {"builtin": "zero", "target": "X"},
        "id": {"builtin": "identity", "target": "C"},
        "double": {
            "source": "C",
            "target": "C",
            "components": [{"0": [[2]]}, {"0": [[2]]}, {"0": [[2]]}],
            "tail": {"kind": "eventually-constant", "start": 0},
        },
    },
    "tasks": [
        {"op": "homology", "spectrum": "M"},
        {"op": "lim", "source": "D"},
        {"op": "naive", "target": "KU", "degree": 2},
        {"op": "promaps", "source": "X", "target": "K"},
    ],
}


@pytest.fixture
def document_text():
    return json.dumps(DOCUMENT, indent=2)


@pytest.fixture
def document_file(tmp_path, document_text):
    path = tmp_path / "instance.json"
    path.write_text(document_text, encoding="utf-8")
    return path
