import pathlib

import pytest

import dgc

CORPUS = pathlib.Path(__file__).resolve().parents[2] / "corpus"


def test_point_report():
    r = dgc.run(CORPUS / "point.toml")
    assert r["schema"] == "dgc-report/1"
    assert r["result"]["betti"] == [1]
    assert r["_invariants_ok"] and r["_resolved"]


def test_run_text_and_backend():
    text = 'name = "line"\nkind = "rigid"\n[algebra]\nnames = ["t"]\nrelations = []\n'
    r = dgc.run_text(text, backend="rational")
    assert r["result"]["betti"][:2] == [1, 0]


def test_graded_dims():
    assert dgc.hh_graded_dims(["x"], [], 3, 3) == [1, 1, 0, 0]
    assert dgc.form_graded_dims(["x", "y"], [], 2) == [3, 4, 1]


def test_errors():
    with pytest.raises(dgc.TaskError):
        dgc.run_text('name = "bad"\nkind = "rigid"\n[algebra]\nnames = ["x"]\nrelations = ["x^^2"]\n')
    with pytest.raises(ValueError):
        dgc.hh_graded_dims(["x", "y"], ["x^2 - y"], 2, 2)
