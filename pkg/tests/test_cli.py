from __future__ import annotations

import json

import pytest

from cliffrep.cli import main

FORM = '{"field": {"kind": "rationals"}, "degree": 3, "coeffs": ["1", "0", "0", "1"]}'


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def rep_files(tmp_path, capsys):
    paths = {}
    for name, extra in [("base", []), ("conj", ["--conjugate-seed", "4"]), ("twist", ["--power", "2"]),
                        ("sum", ["--sum-with-power", "1"]), ("sumc", ["--sum-with-power", "1", "--conjugate-seed", "2"])]:
        p = tmp_path / f"{name}.json"
        code, _, _ = run(capsys, "construct", "--d", "3", "--field", "gf7", "--out", str(p), *extra)
        assert code == 0
        paths[name] = str(p)
    return paths


def test_verify_and_tamper(rep_files, tmp_path, capsys):
    code, out, _ = run(capsys, "verify", "--rep", rep_files["conj"])
    assert code == 0 and json.loads(out)["valid"]
    doc = json.loads(open(rep_files["base"]).read())
    doc["pencil"]["A"][0][0] = "3"
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(doc))
    code, out, err = run(capsys, "verify", "--rep", str(bad))
    assert code == 1 and "coefficient 0" in json.loads(out)["error"]


def test_equiv_exit_codes(rep_files, capsys):
    assert run(capsys, "equiv", "--a", rep_files["base"], "--b", rep_files["conj"])[0] == 0
    assert run(capsys, "equiv", "--a", rep_files["base"], "--b", rep_files["twist"])[0] == 1
    code, out, _ = run(capsys, "equiv", "--a", rep_files["sum"], "--b", rep_files["sumc"])
    assert code == 0 and json.loads(out)["method"] == "randomized"


def test_equiv_undecided(rep_files, capsys):
    # both reducible with matching Hom dimensions; no search trials allowed
    code, out, _ = run(capsys, "equiv", "--a", rep_files["sum"], "--b", rep_files["sumc"], "--trials", "0")
    assert code == 2 and json.loads(out)["equivalent"] is None
    code, out, _ = run(capsys, "equiv", "--a", rep_files["sum"], "--b", rep_files["twist"])
    assert code == 1


def test_equiv_reducible_certificate(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run(capsys, "construct", "--d", "3", "--field", "gf7", "--sum-with-power", "1", "--out", str(a))
    run(capsys, "construct", "--d", "3", "--field", "gf7", "--sum-with-power", "2", "--out", str(b))
    code, out, _ = run(capsys, "equiv", "--a", str(a), "--b", str(b))
    assert code == 1 and json.loads(out)["method"] == "exact"


def test_tangent_and_analyze(tmp_path, capsys):
    p = tmp_path / "c.json"
    run(capsys, "construct", "--d", "3", "--field", "cyc3", "--out", str(p))
    code, out, _ = run(capsys, "tangent", "--rep", str(p))
    doc = json.loads(out)
    assert code == 0 and doc["moduli_dim"] == 1 and doc["manifest"]["command"] == "tangent"
    code, out, _ = run(capsys, "analyze", "--rep", str(p))
    doc = json.loads(out)
    assert code == 0 and doc["verdict"] == "stable" and doc["charpoly_ok"]


def test_census_command(capsys):
    code, out, err = run(capsys, "census", "--form", FORM, "--field", "gf2", "--m", "3")
    doc = json.loads(out)
    assert code == 0 and doc["irreducible_class_count"] == 2 and doc["prediction_status"] == "expected"
    # every table number is also in the JSON
    for line in err.splitlines():
        key, _, val = line.partition("  ")
        key = key.strip()
        if key in doc and not isinstance(doc[key], (dict, list)):
            assert str(doc[key]) == val.strip()
    assert "wall_time" not in out
    code, _, err = run(capsys, "census", "--form", FORM, "--field", "gf3", "--m", "3")
    assert code == 64 and "divides" in err


def test_solve_command(capsys):
    code, out, _ = run(capsys, "solve", "--random-degree", "4", "--m", "4", "--seed", "1")
    doc = json.loads(out)
    assert code == 0 and doc["success"] and doc["diagnostics"]["fibers"]["ok"]
    assert doc["diagnostics"]["jacobian_ok"]
    code, out, _ = run(capsys, "solve", "--form", FORM, "--m", "3", "--restarts", "1", "--max-iters", "1")
    assert code == 1 and not json.loads(out)["success"]


def test_usage_errors(capsys):
    assert run(capsys, "frobnicate")[0] == 64
    assert run(capsys)[0] == 64
    assert run(capsys, "verify")[0] == 64
    assert run(capsys, "verify", "--rep", "/nonexistent.json")[0] == 64
    assert run(capsys, "census", "--form", FORM, "--field", "gf2", "--m", "3", "--jobs", "0")[0] == 64


def test_repeated_runs_byte_identical(capsys):
    outs = {run(capsys, "solve", "--random-degree", "3", "--m", "3", "--seed", "9", "--jobs", str(j))[1]
            for j in (1, 2, 1)}
    assert len(outs) == 1
