import json
import os

from nscurves.cli import main


def run(args):
    return main(args)


def test_intersect_prints_count(capsys):
    assert run(["--surface", "g1b1", "intersect", "pq:1/0", "pq:1/2"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "2"


def test_curve_info(capsys):
    assert run(["--surface", "g1b1", "curve", "pq:1/2", "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["surface"] == "g1b1"
    assert doc["class"] == [1, 2]


def test_cut_command(capsys):
    assert run(["--surface", "g1b2", "cut", "bd:1"]) == 0
    assert capsys.readouterr().out.strip() == "2"


def test_path_and_chain(capsys):
    assert run(["--surface", "g1b1", "path", "pq:1/0", "pq:2/5"]) == 0
    assert run(["--surface", "g1b1", "chain", "pq:1/0", "pq:1/2"]) == 0


def test_bicorns_json(capsys):
    assert run(["--surface", "g1b1", "bicorns", "pq:1/0", "pq:1/2",
                "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["connected"]


def test_usage_error_exit_code(capsys):
    assert run(["--surface", "g1b1", "curve", "zz:nope"]) == 2
    assert run(["--surface", "g0b2", "surface"]) == 2


def test_verify_writes_report(tmp_path, capsys):
    code = run(["--surface", "g1b1", "--out-dir", str(tmp_path),
                "verify", "claim1", "--samples", "3", "--seed", "4"])
    assert code == 0
    report = tmp_path / "report_claim1_g1b1_s4.json"
    assert report.exists()
    doc = json.loads(report.read_text())
    assert doc["passes"] == 3 and doc["failures"] == 0
    assert (tmp_path / "report_claim1_g1b1_s4.csv").exists()


def test_report_diff(tmp_path, capsys):
    for k in (1, 2):
        run(["--surface", "g1b1", "--out-dir", str(tmp_path / str(k)),
             "verify", "claim1", "--samples", "2", "--seed", "6"])
        capsys.readouterr()
    a = str(tmp_path / "1" / "report_claim1_g1b1_s6.json")
    b = str(tmp_path / "2" / "report_claim1_g1b1_s6.json")
    assert run(["report", "--diff", a, b]) == 0
    assert "identical" in capsys.readouterr().out


def test_delta_command(capsys):
    assert run(["--surface", "g1b1", "delta", "--center", "pq:1/0",
                "--radius", "1", "--complexity", "20", "--exact"]) == 0
    out = capsys.readouterr().out
    assert "delta =" in out and "explored subgraph" in out


def test_project_command(capsys):
    code = run(["--surface", "g1b1", "project",
                "pq:1/0", "pq:1/2", "pq:1/1", "pq:0/1"])
    if code == 0:
        doc = json.loads(capsys.readouterr().out)
        assert doc["certified_distance"] <= 8
    else:
        # the chosen curve happens not to be a bicorn of this pair
        assert code == 2
