import argparse
import csv
import json
import subprocess
import sys
from pathlib import Path

import pytest

from pfaffian.cli import SCHEMA_VERSION, UsageError, main, parse_complex, resolve_config

FIXTURE = Path(__file__).parent / "fixtures" / "identities.json"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def read_csv(path):
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    return rows[0], [[float(v) for v in r] for r in rows[1:]]


@pytest.mark.parametrize("form, code, outcome", [
    ("y*dx - i*x*dy", 2, "Incompatible"),
    ("x*(1+(1/2)*y)*dy - y^2*dx", 0, "Compatible"),
    ("x*(1+i*y)*dy - y^2*dx", 2, "Incompatible"),
    ("y*dx - x*dy", 0, "Compatible"),
    ("y*dx - 2*x*dy + x^3*dy", 3, "Inconclusive"),
])
def test_analyze_exit_codes(capsys, form, code, outcome):
    got, out, _ = run(capsys, "analyze", form)
    assert got == code
    rep = json.loads(out)
    assert rep["schema_version"] == SCHEMA_VERSION
    assert rep["verdict"]["outcome"] == outcome


def test_analyze_parse_error(capsys):
    code, out, err = run(capsys, "analyze", "x*dy +")
    assert code == 1 and out == ""
    rep = json.loads(err)
    assert rep["error"]["line"] == 1 and rep["error"]["column"] == 7


def test_analyze_with_evidence(capsys):
    code, out, _ = run(capsys, "analyze", "x*(1+(1/2)*y)*dy - y^2*dx", "--evidence")
    rep = json.loads(out)
    assert code == 0 and rep["evidence"]["entries"]
    for item in rep["evidence"]["entries"]:
        assert "rtol" in item and "atol" in item
        assert item.get("passed", True)


def test_log_input(capsys, tmp_path):
    src = tmp_path / "f.json"
    src.write_text(json.dumps([["x", "1"], ["y", "-1/2"], ["x + y - 1", "2"]]))
    code, out, _ = run(capsys, "analyze", "--log-input", str(src), "--evidence")
    rep = json.loads(out)
    assert code in (0, 2, 3)
    assert rep["input"]["mode"] == "log"


def test_json_is_byte_stable(tmp_path):
    outs = []
    for j in range(2):
        path = tmp_path / f"r{j}.json"
        subprocess.run([sys.executable, "-m", "pfaffian", "analyze", "2*y*dy - 3*x^2*dx", "--json", str(path)],
                       check=True)
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]
    assert json.loads(outs[0])["verdict"]["outcome"] == "Compatible"


def test_config_precedence():
    ns = argparse.Namespace(max_depth=None, tol=None, radius=None, evidence=None)
    assert resolve_config(ns, {}) == {"max_depth": 20, "tol": 1e-6, "radius": None, "evidence": False}
    env = {"PFAFF_MAX_DEPTH": "7", "PFAFF_TOL": "1e-9", "PFAFF_EVIDENCE": "yes"}
    cfg = resolve_config(ns, env)
    assert cfg["max_depth"] == 7 and cfg["tol"] == 1e-9 and cfg["evidence"] is True
    ns.max_depth = 3
    assert resolve_config(ns, env)["max_depth"] == 3
    with pytest.raises(UsageError):
        resolve_config(argparse.Namespace(max_depth=None, tol=None, radius=None, evidence=None),
                       {"PFAFF_EVIDENCE": "maybe"})
    with pytest.raises(UsageError):
        resolve_config(argparse.Namespace(max_depth=None, tol=-1.0, radius=None, evidence=None), {})


def test_env_reaches_the_report(capsys, monkeypatch):
    monkeypatch.setenv("PFAFF_MAX_DEPTH", "1")
    code, _, err = run(capsys, "analyze", "2*y*dy - 3*x^2*dx")
    assert code == 1 and "depth" in err.lower()


def test_parse_complex():
    assert parse_complex("0.1") == 0.1
    assert parse_complex("0.1+0.2i") == 0.1 + 0.2j
    assert parse_complex("1/2 + i") == 0.5 + 1j


def test_holonomy_summary(capsys):
    code, out, _ = run(capsys, "holonomy", "--kind", "resonant", "--p", "1", "--q", "2")
    rep = json.loads(out)
    assert code == 0
    re_, im_ = rep["derivative_at_zero"]
    assert abs(complex(re_, im_) + 1) < 1e-6


def test_trace_holonomy_orbit(capsys, tmp_path):
    path = tmp_path / "orbit.csv"
    assert run(capsys, "trace", "holonomy-orbit", "--k", "1", "--mu", "0", "-o", str(path))[0] == 0
    header, rows = read_csv(path)
    assert header == ["n", "re", "im", "modulus"] and len(rows) == 200
    # 1/v_n = 1/v_0 - 2 pi i n, so the modulus decays once n dominates
    mods = [r[3] for r in rows]
    assert all(b < a for a, b in zip(mods[5:], mods[6:]))


def test_trace_transversal_leaf(capsys, tmp_path):
    path = tmp_path / "leaf.csv"
    code, _, _ = run(capsys, "trace", "transversal-leaf", "--alpha", "1+i", "--seed", "0.3",
                     "--n", "400", "--arc", "2", "-o", str(path))
    assert code == 0
    header, rows = read_csv(path)
    assert header == ["s", "re", "im"] and len(rows) == 400


def test_trace_level_set(capsys, tmp_path):
    path = tmp_path / "level.csv"
    code, _, _ = run(capsys, "trace", "level-set", "--factors", '[["x", "1"], ["y", "-1/2"]]',
                     "--c", "2", "--seed", "1", "-o", str(path))
    assert code == 0
    header, rows = read_csv(path)
    assert header == ["s", "x", "y", "phi"] and len(rows) > 10
    for _, x, y, phi in rows:
        assert abs(x - 2 * y ** 0.5) / x < 1e-8
        assert abs(phi - 2) < 1e-8


def test_trace_csv_to_stdout(capsys):
    code, out, _ = run(capsys, "trace", "holonomy-orbit", "--n", "3")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "n,re,im,modulus" and len(lines) == 4
    # full-precision floats
    assert lines[1].split(",")[1] == "0.10000000000000001"


def test_trace_unknown_kind(capsys):
    code, _, err = run(capsys, "trace", "spiral")
    assert code == 1 and "unknown trace kind" in err


def test_check_fixture(capsys):
    code, _, err = run(capsys, "check", str(FIXTURE))
    assert code == 0
    assert err.count("PASS") == len(json.loads(FIXTURE.read_text())["cases"])


def test_check_reports_failures(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"cases": [{"name": "not-closed", "kind": "closed", "form": "y*dx"}]}))
    code, _, err = run(capsys, "check", str(bad))
    assert code == 2 and "FAIL" in err
