import json
import shutil
import subprocess
import sys
from importlib import resources

import jsonschema
import pytest

from groupeq.cli import main

from conftest import DOCUMENTS

SCHEMA = json.loads(resources.files("groupeq").joinpath("report.schema.json").read_text())


def run_json(capsys, *argv):
    code = main([*argv, "--json"])
    out = capsys.readouterr().out
    assert code == 0, out
    report = json.loads(out)
    jsonschema.validate(report, SCHEMA)
    return report


def doc(name):
    return str(DOCUMENTS / name)


def first(report):
    return report["documents"][0]["result"]


def test_analyze_linear_system(capsys):
    r = first(run_json(capsys, "analyze", doc("linear_system_k9.geq"), "--max-index", "2"))
    assert r["exponent_matrix"] == [[1, 2, 3, 0], [4, 5, 6, 0], [7, 8, 9, 0]]
    assert r["nonsingular"] is False
    dep = r["dependency"]
    assert sum(d * row[0] for d, row in zip(dep, r["exponent_matrix"])) == 0


def test_analyze_main_theorem(capsys):
    r = first(run_json(capsys, "analyze", doc("main_s3.geq"), "--max-index", "2"))
    main_reports = [x for x in r["reports"] if x["theorem"] == "Main theorem"]
    assert main_reports
    li = [c for x in main_reports for c in x["checks"] if c["name"] == "S3/A locally indicable"]
    assert li and all(c["status"] == "failed" for c in li)


def test_subgroups(capsys):
    r = first(run_json(capsys, "subgroups", doc("projective_plane.geq"), "--max-index", "2"))
    assert r["group_order"] == 2
    assert [s["index"] for s in r["subgroups"]] == [1, 2]


def test_homology_sphere_cover(capsys):
    r = first(run_json(capsys, "homology", doc("projective_plane.geq"), "--index-table", "1"))
    assert (r["base"]["h1"], r["base"]["b2"]) == ("Z/2", 0)
    assert (r["cover"]["h1"], r["cover"]["b2"]) == ("0", 1)
    assert r["criterion"]["agree"]


def test_solve(capsys):
    r = first(run_json(capsys, "solve", doc("square_root_c2.geq")))
    assert r["solution"]["overgroup"] == "wreath(C2,C2)"
    r = first(run_json(capsys, "solve", doc("conjugate_c2.geq")))
    assert r["solution"] is None and r["inconclusive"]


def test_rewrite(capsys):
    r = first(run_json(capsys, "rewrite", doc("orbit_v4.geq"), "--normal", "A"))
    assert r["equations"][0]["exponent_matrix"] == [[1, 2], [2, 1]]


def test_seed_corpus_runs_every_document(capsys):
    report = run_json(capsys, "subgroups", "--seed-corpus", "--max-index", "2")
    assert len(report["documents"]) == len(list(DOCUMENTS.glob("*.geq")))


def test_text_output(capsys):
    assert main(["solve", doc("square_root_c2.geq")]) == 0
    out = capsys.readouterr().out
    assert "wreath(C2,C2)" in out and out.startswith("==")


def test_usage_errors(capsys):
    assert main(["analyze"]) == 2
    assert main(["analyze", doc("main_s3.geq"), "--seed-corpus"]) == 2
    assert main(["analyze", doc("main_s3.geq"), "--max-index", "0"]) == 2
    capsys.readouterr()


def test_parse_error_exit(tmp_path, capsys):
    bad = tmp_path / "bad.geq"
    bad.write_text("vars x;\neq: [x, = 1;\n")
    assert main(["analyze", str(bad)]) == 1
    err = capsys.readouterr().err
    assert "line 2" in err and "^" in err


def test_missing_file_exit(capsys):
    assert main(["analyze", "/nonexistent.geq"]) == 1
    capsys.readouterr()


def test_rewrite_needs_normal(capsys):
    assert main(["rewrite", doc("orbit_v4.geq")]) == 1
    capsys.readouterr()


@pytest.mark.skipif(shutil.which("groupeq") is None, reason="console script not installed")
def test_console_script():
    out = subprocess.run(["groupeq", "rewrite", doc("orbit_v4.geq"), "--normal", "A", "--json"],
                         capture_output=True, text=True, check=True).stdout
    assert json.loads(out)["schema"] == 1


def test_module_entry():
    out = subprocess.run([sys.executable, "-m", "groupeq.cli", "subgroups", doc("projective_plane.geq"),
                          "--json", "--max-index", "1"], capture_output=True, text=True, check=True).stdout
    assert json.loads(out)["documents"][0]["result"]["subgroups"][0]["index"] == 1
