import json
import subprocess
import sys

import pytest

from chiforge import harness as hz
from chiforge.cli import run
from chiforge.graph import cycle_graph, empty_graph, expansion, parse_graph6, write_graph6
from chiforge.patterns import QP4

from oracles import brute_chi


def _run(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_color_plain(capsys):
    code, out, _ = _run(capsys, "color", "--graph", "DUW")
    assert code == 0 and out.splitlines()[0] == "chi=3"


def test_expand_then_color(capsys):
    code, g6, _ = _run(capsys, "expand", "--base", "C5", "--weights", "2,2,2,2,2")
    assert code == 0
    g6 = g6.strip()
    assert parse_graph6(g6) == expansion(cycle_graph(5), (2,) * 5)
    code, out, _ = _run(capsys, "color", "--graph", g6, "--json")
    data = json.loads(out)
    assert data["chi"] == 5 == brute_chi(parse_graph6(g6))


def test_color_weighted(capsys):
    code, out, _ = _run(capsys, "color", "--graph", "DUW", "--weights", "2,2,2,2,2", "--json")
    data = json.loads(out)
    assert code == 0 and data["chi_q"] == 5
    assert all(len(c) == 2 for c in data["certificate"]["colours"])


def test_detect(capsys):
    code, out, _ = _run(capsys, "detect", "--graph", write_graph6(cycle_graph(6)), "--pattern", "P4")
    assert code == 0 and len(out.split()) == 4
    code, out, _ = _run(capsys, "detect", "--graph", "DUW", "--pattern", "3K1", "--json")
    assert json.loads(out) == {"pattern": "3K1", "witness": None}
    assert _run(capsys, "detect", "--graph", "DUW", "--pattern", "petersen")[0] == 2


def test_critical(capsys):
    code, out, _ = _run(capsys, "critical", "--graph", "DUW", "--json")
    assert json.loads(out) == {"critical": True, "chi": 3, "chi_without": [2] * 5}
    code, out, _ = _run(capsys, "critical", "--graph", write_graph6(expansion(cycle_graph(5), (1, 1, 1, 1, 0))))
    assert out.startswith("critical=no chi=2")


def test_decompose(capsys):
    code, out, _ = _run(capsys, "decompose", "--graph", "DUW", "--weights", "2,2,2,2,2", "--json")
    data = json.loads(out)
    assert code == 0 and data["k"] == 1
    code, _, err = _run(capsys, "decompose", "--graph", write_graph6(QP4))
    assert code == 2 and "Q{P4}" in err


def test_usage_and_input_errors(capsys):
    with pytest.raises(SystemExit) as e:
        run(["color"])
    assert e.value.code == 1
    with pytest.raises(SystemExit) as e:
        run(["color", "--graph", "DUW", "--bogus"])
    assert e.value.code == 1
    with pytest.raises(SystemExit) as e:
        run(["verify", "--theorem", "9.9"])
    assert e.value.code == 1
    capsys.readouterr()
    assert _run(capsys, "color", "--graph", "D?{x")[0] == 2
    assert _run(capsys, "color", "--graph", "DUW", "--weights", "1,2")[0] == 2
    assert _run(capsys, "color", "--graph", "DUW", "--weights", "a,b,c,d,e")[0] == 2
    assert _run(capsys, "verify", "--theorem", "1.4", "--source", "nowhere:3")[0] == 2


def test_budget_exit(capsys):
    assert _run(capsys, "verify", "--theorem", "1.4", "--source", "builtin:8")[0] == 4
    assert _run(capsys, "color", "--graph", write_graph6(empty_graph(25)))[0] == 4
    # large weight totals use the direct route, which has no vertex budget
    assert _run(capsys, "color", "--graph", "DUW", "--weights", "9,9,9,9,9")[0] == 0


def test_verify_writes_reports_and_is_byte_identical(capsys, tmp_path):
    out1, out2 = tmp_path / "a", tmp_path / "b"
    assert _run(capsys, "verify", "--theorem", "1.2iv", "--source", "builtin:5", "--out", str(out1))[0] == 0
    assert _run(capsys, "verify", "--theorem", "1.2iv", "--source", "builtin:5", "--out", str(out2))[0] == 0
    for name in ("report-1.2iv.json", "report-1.2iv.csv"):
        assert (out1 / name).read_bytes() == (out2 / name).read_bytes()
    data = json.loads((out1 / "report-1.2iv.json").read_text())
    assert data["passed"] and data["failures"] == []
    assert (out1 / "report-1.2iv.csv").read_text().splitlines()[0] == "omega,max_chi,witness_graph6"


def test_verify_exit_3_iff_failures(capsys, tmp_path, monkeypatch):
    monkeypatch.setattr(hz, "p5c4_bound", lambda w: w)
    code, _, _ = _run(capsys, "verify", "--theorem", "1.2iv", "--source", "builtin:5", "--out", str(tmp_path))
    data = json.loads((tmp_path / "report-1.2iv.json").read_text())
    assert code == 3 and data["failures"]


def test_verify_missing_file(capsys, tmp_path):
    assert _run(capsys, "verify", "--theorem", "1.4", "--source", f"file:{tmp_path}/none.g6")[0] == 2
    bad = tmp_path / "bad.g6"
    bad.write_text("DUW\nD?{x\n")
    assert _run(capsys, "verify", "--theorem", "1.4", "--source", f"file:{bad}")[0] == 2


def test_survey(capsys, tmp_path):
    code, out, _ = _run(capsys, "survey", "--source", "builtin:5", "--class", "3K1", "--out", str(tmp_path))
    assert code == 0
    rows = out.strip().splitlines()
    assert rows[0] == "omega,max_chi,witness_graph6"
    assert (tmp_path / "report-survey-3K1.csv").exists()
    assert _run(capsys, "survey", "--source", "builtin:5", "--class", "planar")[0] == 2


def test_module_entry_point(tmp_path):
    res = subprocess.run([sys.executable, "-m", "chiforge", "color", "--graph", "DUW"],
                         capture_output=True, text=True, cwd=tmp_path)
    assert res.returncode == 0 and res.stdout.startswith("chi=3")
