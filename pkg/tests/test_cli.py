import json
import subprocess
import sys

import pytest

from extremal_padic.cli import main, run


def ok(argv):
    doc, code = run(argv)
    assert code == 0, doc
    assert doc["all_pass"] and doc["verdicts"]
    return doc


def test_build_space():
    doc = ok(["build-space", "--level", "11", "--k", "0", "--hecke", "2"])
    assert doc["results"]["cuspidal_dimension"]["value"] == 2


def test_eigensymbol_uses_oracles():
    doc = ok(["eigensymbol", "--level", "11", "--check-primes", "2,3,5"])
    assert doc["results"]["plus_a_5"]["value"] == "1"
    assert doc["results"]["oracle_a_5"]["provenance"].startswith("oracle")
    ok(["eigensymbol", "--level", "1", "--k", "10", "--check-primes", "2,3"])


def test_stabilize_measure_and_table_roundtrip(tmp_path):
    ok(["stabilize", "--p", "7"])
    out = tmp_path / "table.json"
    ok(["measure", "--p", "3", "--depth", "3", "--output", str(out)])
    table = json.loads(out.read_text())
    assert table["provenance"] == "FROM_SYMBOL" and table["p"] == 3
    doc = ok(["lp", "--table", str(out), "--s", "0", "--precision", "2"])
    assert any(v["name"] == "L_p(0) = total mass" for v in doc["verdicts"])


def test_extremal_command():
    doc = ok(["extremal", "--p", "3", "--k", "0", "--depth", "3", "--seed", "0,1,2"])
    assert len(doc["verdicts"]) == 3 * 5 + 1


def test_lp_extremal():
    ok(["lp", "--extremal", "--p", "3", "--k", "0", "--depth", "5", "--s", "1", "--precision", "1"])


def test_euler_and_gauss():
    doc = ok(["euler", "--case", "extremal", "--p", "5", "--k", "0", "--m", "0", "--cond", "0"])
    assert doc["results"]["closed_form"]["value"] == {"a": "-1/2", "b": "1/2", "D": "5"}
    ok(["euler", "--case", "principal", "--p", "3", "--k", "2", "--m", "1", "--cond", "1"])
    doc = ok(["gauss", "--p", "5", "--r", "1", "--char", "quadratic"])
    assert doc["results"]["tau_squared"]["value"]["coefficients"][0] == "5"


def test_verify_all():
    ok(["verify", "--suite", "all", "--p", "3", "--depth", "3"])


def test_pole_exits_one():
    doc, code = run(["euler", "--case", "extremal", "--p", "5", "--chi-p", "theta"])
    assert code == 1 and not doc["all_pass"]
    assert doc["results"]["oracle_report"]["converges"] is False


@pytest.mark.parametrize("argv", [
    ["euler", "--m", "3", "--k", "2"],
    ["euler", "--cond", "1", "--index", "4"],
    ["gauss", "--r", "2", "--char", "quadratic"],
    ["eigensymbol", "--level", "13"],
    ["eigensymbol", "--targets", "2:x"],
    ["stabilize", "--p", "11"],
])
def test_usage_errors_exit_two(argv):
    doc, code = run(argv)
    assert code == 2 and "error" in doc and not doc["all_pass"]


def test_resource_bound_exits_two(monkeypatch):
    monkeypatch.setenv("EXTREMAL_PADIC_MAX_COORDS", "10")
    doc, code = run(["build-space", "--level", "11"])
    assert code == 2 and doc["error"]["type"] == "ResourceBoundError"


def test_reports_are_reproducible(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for f in (a, b):
        assert main(["verify", "--suite", "gauss", "--p", "5", "--report", str(f)]) == 0
    assert a.read_bytes() == b.read_bytes()
    main(["gauss", "--p", "3", "--timing"])
    assert "timing" in json.loads(capsys.readouterr().out)


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "extremal_padic", "gauss", "--p", "3"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and json.loads(r.stdout)["all_pass"]
