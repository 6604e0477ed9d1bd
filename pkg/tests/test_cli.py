import json
import subprocess
import sys
from pathlib import Path

import pytest

from hsint.cli import main
from hsint.errors import InputError
from hsint.problem import dump_problem, parse_problem

PROBLEMS = Path(__file__).resolve().parent.parent / "problems"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr().out
    return code, out


def test_parse_problem_examples():
    spec = parse_problem({"characteristic": 2, "variables": ["x"], "ideal": ["x^2"]})
    assert spec.characteristic == 2 and spec.ideal == ["x^2"]
    with pytest.raises(InputError, match="x \\+ w|unknown variable|w"):
        parse_problem({"characteristic": 2, "variables": ["x"], "ideal": ["x + w"]})
    with pytest.raises(InputError, match="characteristic must be 0 or prime"):
        parse_problem({"characteristic": 4, "variables": ["x"], "ideal": []})
    with pytest.raises(InputError):
        parse_problem('{"characteristic": 2, "variables": ["x"], "ideal": ["x"], "bogus": 1}')
    with pytest.raises(InputError):
        parse_problem("{not json")
    with pytest.raises(InputError):
        parse_problem({"characteristic": 2, "variables": ["x"], "derivation": {"y": "1"}})


def test_round_trip_fixed_point():
    for path in sorted(PROBLEMS.glob("*.json")):
        canon = parse_problem(path).canonical()
        text = dump_problem(canon)
        again = parse_problem(text).canonical()
        assert dump_problem(again) == text


def test_leaps_verb(capsys):
    code, out = run(capsys, "leaps", PROBLEMS / "dual_numbers_f2.json", "--max-order", 8)
    rep = json.loads(out)
    assert code == 0 and rep["results"]["leaps"] == [2]


def test_fitting_verb(capsys):
    code, out = run(capsys, "fitting", PROBLEMS / "cusp_char2.json", "--ell", 1)
    assert code == 0 and json.loads(out)["results"]["generators"] == ["x^2"]
    code, out = run(capsys, "fitting", PROBLEMS / "cusp_char2.json")
    assert code == 4


def test_check_hs_verb(capsys):
    code, out = run(capsys, "check-hs", PROBLEMS / "bad_hs_f2.json")
    rep = json.loads(out)
    assert code == 2 and rep["results"]["generator"] == 0 and "x^2" in rep["message"]
    code, _ = run(capsys, "check-hs", PROBLEMS / "good_hs_f2.json")
    assert code == 0


def test_integrate_verb_methods(capsys):
    code, out = run(capsys, "integrate", PROBLEMS / "cusp_char2.json", "--method", "ci", "--max-order", 6)
    rep = json.loads(out)
    assert code == 0 and rep["results"]["length"] == 6
    assert all(c["pass"] for c in rep["transcript"])
    code, out = run(capsys, "integrate", PROBLEMS / "cusp_equidim.json", "--max-order", 4)
    assert code == 0 and json.loads(out)["results"]["method"] == "equidimensional-Delta"
    code, out = run(capsys, "integrate", PROBLEMS / "plane_line_f5.json", "--max-order", 4)
    assert code == 0 and json.loads(out)["results"]["method"] == "reduced-log"
    code, out = run(capsys, "integrate", PROBLEMS / "cusp_char2.json", "--degree-bound", 3, "--max-order", 4)
    assert code == 0


def test_integrate_hypothesis_failure_exit_code(capsys, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text(json.dumps({"characteristic": 2, "variables": ["x", "y"], "ideal": ["y^2 + x^3"],
                             "derivation": {"y": "x"}}))
    code, out = run(capsys, "integrate", p, "--method", "ci")
    rep = json.loads(out)
    assert code == 2 and rep["reason"] == "hypothesis_error"


def test_budget_exit_code(capsys, monkeypatch):
    monkeypatch.setenv("HS_BUDGET_STEPS", "1")
    code, out = run(capsys, "leaps", PROBLEMS / "x4_f2.json", "--max-order", 8)
    assert code == 3


def test_input_error_exit_code(capsys, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"characteristic": 4, "variables": ["x"], "ideal": []}')
    code, out = run(capsys, "fitting", p, "--ell", 1)
    assert code == 4 and "characteristic must be 0 or prime" in json.loads(out)["message"]


def test_other_verbs(capsys):
    code, out = run(capsys, "genericgens", PROBLEMS / "plane_line_f5.json")
    rep = json.loads(out)
    assert code == 0 and len(rep["results"]["F"]) == 2
    code, out = run(capsys, "derivations", PROBLEMS / "x3_f3.json", "--text")
    assert code == 0 and "dimension: 3" in out


def test_reports_are_byte_identical():
    cmd = [sys.executable, "-m", "hsint.cli", "leaps", str(PROBLEMS / "x4_f2.json"), "--max-order", "8"]
    a = subprocess.run(cmd, capture_output=True, text=True)
    b = subprocess.run(cmd, capture_output=True, text=True)
    assert a.returncode == 0 and a.stdout == b.stdout


def test_timing_is_opt_in(capsys):
    _, out = run(capsys, "fitting", PROBLEMS / "cusp_char2.json", "--ell", 1)
    assert "timing_seconds" not in json.loads(out)
    _, out = run(capsys, "fitting", PROBLEMS / "cusp_char2.json", "--ell", 1, "--timing")
    assert "timing_seconds" in json.loads(out)
