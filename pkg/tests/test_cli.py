import csv
import io
import json
import shutil
import subprocess

import pytest

from ggstwist.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_enumerate_counts(capsys):
    for n, count in ((2, 1), (3, 3)):
        code, out, _ = run(capsys, "enumerate", "--n", str(n))
        assert code == 0
        assert json.loads(out)["count"] == count


def test_enumerate_filter_gen_cg(capsys):
    code, out, _ = run(capsys, "enumerate", "--n", "5", "--filter", "generalized-cg")
    assert code == 0 and json.loads(out)["count"] == 4


def test_enumerate_csv(capsys):
    code, out, _ = run(capsys, "enumerate", "--n", "3", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [r["triple"] for r in rows] == ["n=3;", "n=3; a1->a2", "n=3; a2->a1"]


def test_cap_exceeded(capsys):
    code, _, err = run(capsys, "enumerate", "--n", "12")
    assert code == 2 and "cap" in err


@pytest.mark.parametrize("argv", [
    ["verify", "--n", "4", "--checks", "nope"],
    ["verify"],
    ["enumerate", "--n", "3", "--n-max", "4"],
    ["verify", "--triple", "n=3; a1->a1"],
    ["verify", "--triple", "garbage"],
    ["enumerate", "--n", "3", "--filter", "weird"],
    ["frobnicate"],
])
def test_usage_errors(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == 2


def test_verify_sweep_passes(capsys):
    code, out, err = run(capsys, "verify", "--n", "4", "--checks", "qybe,hecke,twist-eq", "--jobs", "1")
    assert code == 0
    recs = [json.loads(line) for line in out.splitlines()]
    assert len(recs) == 9
    assert all(v["status"] == "pass" for r in recs for v in r["checks"].values())
    assert "0 with failures" in err


def test_verify_single_triple(capsys):
    code, out, _ = run(capsys, "verify", "--n", "3", "--triple", "a1->a2", "--checks", "classical-limit")
    assert code == 0
    rec = json.loads(out)
    assert set(rec["checks"]) == {"classical-limit.ggs", "classical-limit.rj"}


def test_verify_injected_fault(capsys):
    code, out, err = run(capsys, "verify", "--triple", "n=3; a1->a2", "--inject-fault", "R", "--jobs", "1")
    assert code == 1
    rec = json.loads(out)
    assert rec["checks"]["qybe.ggs"]["witness"]["index"]
    assert "FAIL n=3; a1->a2 qybe.ggs" in err


def test_verify_perturbed_r0(capsys):
    code, out, _ = run(capsys, "verify", "--triple", "n=4;", "--perturb-r0", "--seed", "7")
    assert code == 0
    assert json.loads(out)["r0"] != [["0"] * 4] * 4


def test_reports_are_byte_identical(tmp_path, capsys):
    a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    assert main(["verify", "--n-max", "4", "--jobs", "1", "--out", str(a)]) == 0
    assert main(["verify", "--n-max", "4", "--jobs", "2", "--out", str(b)]) == 0
    capsys.readouterr()
    assert a.read_bytes() == b.read_bytes()


def test_report_empty_dir(tmp_path, capsys):
    code, out, _ = run(capsys, "report", str(tmp_path))
    assert code == 0 and json.loads(out) == {"count": 0, "rows": []}


def test_report_missing(tmp_path, capsys):
    code, _, _ = run(capsys, "report", str(tmp_path / "nothing"))
    assert code == 2


def test_report_json_csv_agree(tmp_path, capsys):
    sweep = tmp_path / "n3.jsonl"
    assert main(["verify", "--n", "3", "--jobs", "1", "--out", str(sweep)]) == 0
    capsys.readouterr()
    code, out_json, _ = run(capsys, "report", str(tmp_path), "--format", "json")
    assert code == 0
    rows = json.loads(out_json)["rows"]
    assert len(rows) == 3
    code, out_csv, _ = run(capsys, "report", str(sweep), "--format", "csv")
    crows = list(csv.DictReader(io.StringIO(out_csv)))
    assert [r["triple"] for r in crows] == [r["triple"] for r in rows]
    for jr, cr in zip(rows, crows):
        assert {k: cr[k] for k in jr["checks"]} == jr["checks"]
        assert set(jr) == {"triple", "classification", "checks", "timing"}


def test_report_resumes_by_triple_id(tmp_path, capsys):
    first = tmp_path / "a.jsonl"
    second = tmp_path / "b.jsonl"
    main(["verify", "--n", "3", "--jobs", "1", "--out", str(first)])
    main(["verify", "--triple", "n=3; a1->a2", "--jobs", "1", "--checks", "twist-eq", "--out", str(second)])
    capsys.readouterr()
    code, out, _ = run(capsys, "report", str(tmp_path))
    rows = {r["triple"]: r for r in json.loads(out)["rows"]}
    assert len(rows) == 3
    assert set(rows["n=3; a1->a2"]["checks"]) == {"twist-eq"}


def test_classify_and_build(capsys):
    code, out, _ = run(capsys, "classify", "--triple", "n=3; a1->a2")
    assert code == 0 and "CG" in json.loads(out)["classification"]
    code, out, _ = run(capsys, "build", "K", "--triple", "n=3; a1->a2")
    assert json.loads(out)["K"] == [{"alpha": "e_1 - e_2", "beta": "e_2 - e_3", "K": "1/2"}]
    code, out, _ = run(capsys, "build", "J", "--triple", "n=3; a1->a2")
    assert code == 0 and json.loads(out)["layers"][0]["layer"] == 1
    code, out, _ = run(capsys, "solve-r0", "--n", "3")
    assert code == 0 and len(out.splitlines()) == 3


@pytest.mark.skipif(shutil.which("ggstwist") is None, reason="console script not installed")
def test_console_script():
    proc = subprocess.run(["ggstwist", "enumerate", "--n", "3"], capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["count"] == 3
