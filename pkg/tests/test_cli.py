import json

import pytest

from tordep.cli import EXIT_INCONCLUSIVE, EXIT_INPUT, EXIT_OK, EXIT_SINGULAR, format_report, main

ORDER4 = {"a1": "0", "a2": "-1", "a3": "0", "a4": "1", "a6": "0"}
CM_I = {"short": ["-1", "0"]}


@pytest.fixture
def curve_file(tmp_path):
    def make(data, name="curve.json"):
        p = tmp_path / name
        p.write_text(json.dumps(data))
        return str(p)

    return make


def run(args, tmp_path, name="out.json"):
    out = tmp_path / name
    code = main(args + ["--out", str(out)])
    return code, (out.read_text() if out.exists() else None)


def test_torsion_command(curve_file, tmp_path):
    code, text = run(["torsion", "--curve", curve_file(ORDER4), "--nmax", "4"], tmp_path)
    assert code == EXIT_OK
    data = json.loads(text)
    assert data["N_max"] == 4
    pts = {(p["point"]["x"], p["point"]["y"]): p["order"] for p in data["points"]
           if isinstance(p["point"]["x"], str) and isinstance(p["point"]["y"], str)}
    assert pts[("1", "1")] == 4 and pts[("0", "0")] == 2


def test_empty_catalog(curve_file, tmp_path):
    code, text = run(["torsion", "--curve", curve_file(ORDER4), "--nmax", "1"], tmp_path)
    assert code == EXIT_OK and json.loads(text)["points"] == []


def test_singular_curve_exit(curve_file, tmp_path, capsys):
    code, _ = run(["torsion", "--curve", curve_file({"a1": 0, "a2": -1, "a3": 0, "a4": 0, "a6": 0})], tmp_path)
    assert code == EXIT_SINGULAR
    assert "singular" in capsys.readouterr().err


@pytest.mark.parametrize(
    "extra",
    [
        ["--functions", " , ", "--eps", "0.1"],
        ["--functions", "X+", "--eps", "0.1"],
        ["--functions", "X", "--eps", "-1"],
        ["--functions", "X", "--eps", "cm"],
        ["--functions", "X"],
        ["--functions", "@/nonexistent/file", "--eps", "0.1"],
    ],
)
def test_bad_inputs_exit_2(curve_file, tmp_path, extra):
    code, _ = run(["depsearch", "--curve", curve_file(ORDER4), "--nmax", "2"] + extra, tmp_path)
    assert code == EXIT_INPUT


def test_bad_curve_file(tmp_path, curve_file):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(["torsion", "--curve", str(bad)], tmp_path)[0] == EXIT_INPUT
    assert run(["torsion", "--curve", curve_file({"a1": "x"})], tmp_path)[0] == EXIT_INPUT
    assert run(["torsion", "--curve", str(tmp_path / "missing.json")], tmp_path)[0] == EXIT_INPUT


def test_depsearch_and_report(curve_file, tmp_path, capsys):
    args = ["depsearch", "--curve", curve_file(ORDER4), "--nmax", "4", "--functions", "X,Y", "--eps", "0.1"]
    code, text = run(args, tmp_path)
    assert code == EXIT_OK
    data = json.loads(text)
    hit = [h for h in data["hits"] if h["point"] == {"x": "1", "y": "1"}]
    assert hit and hit[0]["order"] == 4
    assert hit[0]["certificate"] == {"kind": "dependent", "vector": [1, 0], "zeta_order": 1}
    assert data["hrushovski_note"]
    rep = tmp_path / "report.json"
    rep.write_text(text)
    assert main(["report", str(rep)]) == EXIT_OK
    shown = capsys.readouterr().out
    assert "hits (" in shown and "(1, 1)" in shown
    assert format_report(data) == shown


def test_depsearch_is_deterministic(curve_file, tmp_path):
    args = ["depsearch", "--curve", curve_file(ORDER4), "--nmax", "4", "--functions", "X,Y", "--eps", "0.1"]
    a = run(args, tmp_path, "a.json")[1]
    b = run(args, tmp_path, "b.json")[1]
    assert a == b


def test_function_file(curve_file, tmp_path):
    fs = tmp_path / "fs.txt"
    fs.write_text("# coordinates\nX\nY  # second\n")
    args = ["depsearch", "--curve", curve_file(CM_I), "--nmax", "4", "--eps", "0.1"]
    a = run(args + ["--functions", f"@{fs}"], tmp_path, "a.json")[1]
    b = run(args + ["--functions", "X,Y"], tmp_path, "b.json")[1]
    assert a == b and json.loads(a)["functions"] == ["X", "Y"]


def test_inconclusive_exit(curve_file, tmp_path, capsys):
    args = ["depsearch", "--curve", curve_file(ORDER4), "--nmax", "3", "--functions", "X+2,Y+2"]
    code, text = run(args + ["--eps", "0.1", "--budget", "10"], tmp_path)
    assert code == EXIT_INCONCLUSIVE
    assert json.loads(text)["inconclusive"]


def test_dependence_warning(curve_file, tmp_path, capsys):
    args = ["depsearch", "--curve", curve_file(CM_I), "--nmax", "2", "--functions", "X,X^2", "--eps", "0.1"]
    assert run(args, tmp_path)[0] == EXIT_OK
    assert "warning" in capsys.readouterr().err


def test_bounds_command(curve_file, tmp_path):
    args = ["bounds", "--curve", curve_file(ORDER4), "--functions", "X,Y", "--eps", "0.1"]
    code, text = run(args, tmp_path)
    assert code == EXIT_OK
    data = json.loads(text)
    assert set(data) >= {"hx", "hy", "B_i", "B", "eps", "M"}
    assert len(data["B_i"]) == 2 and isinstance(data["M"], int)


def test_betti_verify(curve_file, tmp_path):
    args = ["betti-verify", "--curve", curve_file(ORDER4), "--nmax", "4", "--precision", "64"]
    code, text = run(args + ["--functions", "X,Y", "--eps", "0.1"], tmp_path)
    assert code == EXIT_OK
    data = json.loads(text)
    assert data["pass"] and data["points"] and data["relations"]
    assert all(r["frac_ap"] < 1e-9 for r in data["points"])


def test_precision_from_environment(curve_file, tmp_path, monkeypatch):
    monkeypatch.setenv("TORDEP_PRECISION", "96")
    code, text = run(["betti-verify", "--curve", curve_file(CM_I), "--nmax", "2"], tmp_path)
    assert code == EXIT_OK and json.loads(text)["precision"] == 96
    monkeypatch.setenv("TORDEP_PRECISION", "lots")
    assert run(["betti-verify", "--curve", curve_file(CM_I), "--nmax", "2"], tmp_path)[0] == EXIT_INPUT


def test_nonpositive_options(curve_file, tmp_path):
    assert run(["torsion", "--curve", curve_file(ORDER4), "--nmax", "0"], tmp_path)[0] == EXIT_INPUT
    assert run(["torsion", "--curve", curve_file(ORDER4), "--budget", "0"], tmp_path)[0] == EXIT_INPUT
