import csv
import io
import json
import subprocess
import sys

import pytest

from qplab import cli
from qplab.docio import save_drawing, to_document
from qplab.lab import GeneratorSpec, convex_points, figure_fixture, generate, make_k_quasiplanar

from conftest import convex_complete, path_drawing, straight, write_doc


def run(capsys, *argv):
    code = cli.main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    return code, json.loads(out)


def save(tmp_path, d, name="d.json"):
    p = tmp_path / name
    save_drawing(d, p)
    return p


TRIANGLE = {"version": 1,
            "vertices": [{"id": 1, "x": "0", "y": "0"}, {"id": 2, "x": "2", "y": "1"},
                         {"id": 3, "x": "1", "y": "3"}],
            "edges": [{"u": 1, "v": 2}, {"u": 2, "v": 3}, {"u": 1, "v": 3}]}


def test_validate(capsys, tmp_path):
    code, rep = run_json(capsys, "validate", write_doc(tmp_path, TRIANGLE))
    assert code == 0 and rep["valid"]
    dup = json.loads(json.dumps(TRIANGLE))
    dup["vertices"][2]["id"] = 1
    code, rep = run_json(capsys, "validate", write_doc(tmp_path, dup))
    assert code == 2 and "duplicate-vertex-id" in {v["kind"] for v in rep["violations"]}
    code, out = run_json(capsys, "validate", write_doc(tmp_path, "{oops"))
    assert code == 1 and out["error"] == "DocumentError"
    bad = json.loads(json.dumps(TRIANGLE))
    del bad["edges"][1]["u"]
    code, out, err = run(capsys, "validate", write_doc(tmp_path, bad))
    assert code == 1 and "edges[1].u" in err


def test_analyze(capsys, tmp_path):
    code, out = run_json(capsys, "analyze", save(tmp_path, convex_complete(4)), "--k", 3)
    assert code == 0 and out["quasiplanar"] and out["max_pairwise_crossing"]["size"] == 2
    assert not out["k_is_default"]
    assert out["bisection_report"]["holds"]
    code, out = run_json(capsys, "analyze", save(tmp_path, path_drawing(5)))
    assert out["crossing_count"] == 0 and out["k"] == 3 and out["k_is_default"]
    code, out = run_json(capsys, "analyze", save(tmp_path, path_drawing(5)), "--k", 1)
    assert code == 1 and out["error"] == "InvalidK"


def test_analyze_rejects_invalid(capsys, tmp_path):
    d = straight([(0, 0), (2, 0), (1, 0)], [(1, 2)])
    code, out = run_json(capsys, "analyze", save(tmp_path, d))
    assert code == 2 and out["violations"]


def test_sequences_figure1(capsys, tmp_path):
    p = save(tmp_path, figure_fixture("figure1"))
    code, out = run_json(capsys, "sequences", p, "--edge", 6, 7, "--check-regular", 2,
                         "--detect", "up:2,2", "--detect", "udu:2")
    assert code == 0
    assert out["S1"] == [1, 3, 4, 3, 2] and out["S2"] == [2, 2, 1, 5, 5]
    assert out["regular"][0]["holds"]
    s1_up = next(x for x in out["detect"] if x["sequence"] == "S1" and x["pattern"] == "up:2,2")
    assert s1_up["occurrence"] is None
    code, out = run_json(capsys, "sequences", p, "--edge", 7, 6)
    assert out["S1"] == [1, 3, 4, 3, 2]
    code, out = run_json(capsys, "sequences", p, "--edge", 6, 7, "--reverse")
    assert out["S1"] == [5, 5, 1, 2, 2]


@pytest.mark.parametrize("fixture", ["figure1", "figure2"])
def test_check_regular_holds_on_fixtures(capsys, tmp_path, fixture):
    d = figure_fixture(fixture)
    p = save(tmp_path, d)
    code, out = run_json(capsys, "sequences", p, "--auto", "--check-regular", 2, "--check-regular", 3)
    assert code == 0 and all(r["holds"] for r in out["regular"])


def test_sequences_errors(capsys, tmp_path):
    d = straight([(0, 0), (2, 0), (1, -1), (1, 1), (5, 5), (6, 7)], [(1, 2), (3, 4), (5, 6)])
    p = save(tmp_path, d)
    code, out = run_json(capsys, "sequences", p, "--edge", 5, 6, "--detect", "up:2,2")
    assert code == 3 and out["error"] == "NoCrossings"
    code, _ = run_json(capsys, "sequences", p, "--edge", 1, 5)
    assert code == 1
    code, _ = run_json(capsys, "sequences", p, "--edge", 1, 2, "--detect", "side:3")
    assert code == 1
    code, _ = run_json(capsys, "sequences", p)
    assert code == 1
    code, out = run_json(capsys, "sequences", save(tmp_path, path_drawing(4)), "--auto")
    assert code == 3


def test_sequences_forbidden_up(capsys, tmp_path):
    code, out = run_json(capsys, "sequences", save(tmp_path, convex_complete(7)), "--auto",
                         "--forbidden-up", 3)
    assert code == 0 and out["forbidden_up"]["status"] == "vacuously-absent"
    assert not out["forbidden_up"]["refutation"]


def test_xmono(capsys, tmp_path):
    code, out = run_json(capsys, "xmono", save(tmp_path, straight([(0, 0), (3, 1)], [(1, 2)])))
    assert code == 0
    assert out["retention"]["E_cross"] == 1 and out["retention"]["retained"] == 1
    dup = straight([(0, 0), (0, 5), (3, 1)], [(1, 3), (2, 3)])
    code, out = run_json(capsys, "xmono", save(tmp_path, dup))
    assert code == 4 and out["error"] == "DuplicateX"
    code, out = run_json(capsys, "xmono", save(tmp_path, figure_fixture("figure2")))
    assert code == 2


@pytest.mark.parametrize("seed", range(4))
def test_xmono_retention(capsys, tmp_path, seed):
    d = make_k_quasiplanar(generate(GeneratorSpec("random-x-monotone", n=8, seed=seed, edge_prob=0.7)), 3)
    code, out = run_json(capsys, "xmono", save(tmp_path, d), "--k", 3)
    assert code == 0 and out["retention"]["ok"]
    assert 4 * out["retention"]["retained"] >= out["retention"]["E_cross"]
    assert not out["refutation"]


def test_bounds(capsys, tmp_path):
    code, out, err = run(capsys, "bounds", "--k", 5, "--n", "2^10", "--formulas", "pss")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0 and len(rows) == 2 and rows[1][:3] == ["pss", "5", "1024"]
    assert "constants:" in err
    target = tmp_path / "b.csv"
    code, out = run_json(capsys, "bounds", "--k", 5, "--n", "2^10,2^30,2^60",
                         "--formulas", "alpha_tower,pss", "--out", target)
    assert code == 0 and out["rows"] == 6 and out["constants"]["log_base"] == 2
    rows = list(csv.DictReader(io.StringIO(target.read_text())))
    assert "crossover" in rows[0] and len(rows) == 6
    code, out = run_json(capsys, "bounds", "--formulas", "bogus")
    assert code == 5 and "alpha_tower" in out["message"]
    code, _ = run_json(capsys, "bounds", "--n", "two")
    assert code == 1


def test_extremal(capsys, tmp_path):
    code, out = run_json(capsys, "extremal", "--convex", 5, "--k", 3)
    assert code == 0 and out["max_edges"] == 10 and out["name"] == "convex5"
    code, out = run_json(capsys, "extremal", "--convex", 4, "--k", 2)
    assert out["max_edges"] == 5
    code, out = run_json(capsys, "extremal", "--convex", 10)
    assert code == 6 and out["error"] == "SizeLimit"
    pts = tmp_path / "tri.json"
    pts.write_text(json.dumps({"points": [["0", "0"], ["4", "0"], ["1", "3"], ["2", "1"]]}))
    code, out = run_json(capsys, "extremal", "--points", pts, "--k", 2)
    assert code == 0 and out["max_edges"] == 6 and out["name"] == "tri"
    pts.write_text("[[0, 0], [1, 1], [2, 2]]")
    code, _ = run_json(capsys, "extremal", "--points", pts)
    assert code == 1
    pts.write_text("{")
    code, _ = run_json(capsys, "extremal", "--points", pts)
    assert code == 1


def test_extremal_update_golden(capsys, tmp_path):
    golden = tmp_path / "g.json"
    for k in (3, 2, 3):
        code, _ = run_json(capsys, "extremal", "--convex", 5, "--k", k, "--update-golden",
                           "--golden-file", golden)
        assert code == 0
    recs = json.loads(golden.read_text())["records"]
    assert [(r["name"], r["k"], r["max_edges"]) for r in recs] == [("convex5", 2, 7), ("convex5", 3, 10)]


def test_generate(capsys, tmp_path):
    code, out, _ = run(capsys, "generate", "--kind", "convex-complete", "--n", 5, "--seed", 1)
    assert code == 0 and len(json.loads(out)["edges"]) == 10
    _, again, _ = run(capsys, "generate", "--kind", "convex-complete", "--n", 5, "--seed", 1)
    assert again == out
    target = tmp_path / "g.json"
    code, _, _ = run(capsys, "generate", "--kind", "random-x-monotone", "--n", 7, "--seed", 2,
                     "--quasiplanar", 3, "--out", target)
    assert code == 0
    code, rep = run_json(capsys, "analyze", target)
    assert rep["quasiplanar"]


def test_outputs_are_canonical(capsys, tmp_path):
    code, out, _ = run(capsys, "analyze", save(tmp_path, convex_complete(5)))
    assert out.strip() == json.dumps(json.loads(out), sort_keys=True, indent=2)


def test_module_entry_point(tmp_path):
    p = save(tmp_path, convex_complete(4))
    res = subprocess.run([sys.executable, "-m", "qplab.cli", "analyze", str(p)],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0 and json.loads(res.stdout)["crossing_count"] == 1
