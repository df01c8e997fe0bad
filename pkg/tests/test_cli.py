import json
import subprocess
import sys
from pathlib import Path

import pytest

import oracles

from galois_tukey.cli import main

DATA = Path(__file__).resolve().parent.parent / "demos" / "data"
NEQ3, NEQ2, EQ2 = (str(DATA / f) for f in ("neq3.rel", "neq2.rel", "eq2.rel"))
REPORT_KEYS = {"verb", "inputs", "result", "witness", "mode", "seed", "elapsed_ms"}


def run(capsys, *argv):
    status = main(list(argv))
    out, err = capsys.readouterr()
    return status, (json.loads(out) if out else None), err


def run_process(*argv, stdin=None):
    return subprocess.run([sys.executable, "-m", "galois_tukey", *argv], input=stdin,
                          capture_output=True, text=True, check=False)


def test_norm_of_neq3(capsys):
    status, report, err = run(capsys, "norm", NEQ3)
    assert status == 0
    assert set(report) == REPORT_KEYS
    assert report["result"] == 2
    assert report["witness"]["cover"] == [0, 1]
    assert report["mode"] == "EXACT" and report["elapsed_ms"] is None
    assert "norm = 2" in err


def test_oldprod_piped_into_norm():
    first = run_process("oldprod", NEQ3, NEQ3)
    assert first.returncode == 0
    second = run_process("norm", "-", stdin=first.stdout)
    assert second.returncode == 0
    assert json.loads(second.stdout)["result"] == 3


def test_product_dual_and_seqcomp(capsys):
    status, report, _ = run(capsys, "product", NEQ3, NEQ3)
    assert status == 0 and len(report["result"]["minus"]) == 6 and len(report["result"]["plus"]) == 9
    status, report, _ = run(capsys, "dual", EQ2)
    assert report["result"]["rel"] == [[0, 1], [1, 0]]
    status, report, _ = run(capsys, "seqcomp", EQ2, NEQ3)
    assert status == 0 and len(report["result"]["minus"]) == 2 * 3 ** 2


def test_catalog_sweep_report(capsys):
    status, report, _ = run(capsys, "catalog", "s_le_d", "--sweep", "100", "--seed", "7")
    assert status == 0
    verdicts = report["result"]["verdicts"]
    assert len(verdicts) == 100
    assert not any(v["status"] == "FAIL" for v in verdicts)
    assert report["result"]["summary"]["fail"] == 0
    assert report["seed"] == 7
    assert all(h["status"] != "FAIL" for h in report["result"]["hand_picked"])


def test_verify_and_search_exit_codes(capsys):
    status, report, _ = run(capsys, "verify", str(DATA / "eq2_to_neq3.json"))
    assert status == 0 and report["result"] == {"ok": True}
    status, report, err = run(capsys, "verify", str(DATA / "neq3_to_neq2.json"))
    assert status == 1 and report["witness"]["counterexample"] == [0, 2]
    assert "FAIL" in err
    status, report, err = run(capsys, "search", NEQ3, NEQ2)
    assert status == 1 and report["result"] is None and report["witness"] == {"exists": False}
    assert "none exists" in err
    status, report, _ = run(capsys, "search", EQ2, NEQ3)
    rows = [[bool(v) for v in r] for r in json.loads(Path(EQ2).read_text())["rel"]], \
        [[bool(v) for v in r] for r in json.loads(Path(NEQ3).read_text())["rel"]]
    mm, pm = oracles.first_morphism(*rows)
    assert status == 0
    assert (report["result"]["minus_map"], report["result"]["plus_map"]) == (list(mm), list(pm))


def test_errors_exit_two_with_distinct_messages(capsys, tmp_path):
    status, report, err = run(capsys, "norm", str(tmp_path / "missing.rel"))
    assert status == 2 and report is None and "file not found" in err
    bad = tmp_path / "bad.rel"
    bad.write_text(json.dumps({"minus": [0, 1], "plus": [0, 1], "rel": [[0, 3], [1, 0]]}))
    status, _, err = run(capsys, "norm", str(bad))
    assert status == 2 and "schema violation" in err
    bad.write_text("not json")
    status, _, err = run(capsys, "norm", str(bad))
    assert status == 2 and "schema violation" in err
    status, _, err = run(capsys, "seqcomp", NEQ3, NEQ3, "--cap", "5")
    assert status == 2 and "cap exceeded" in err
    status, _, err = run(capsys, "search", NEQ3, NEQ3, "--cap", "3")
    assert status == 2 and "cap exceeded" in err
    status, _, _ = run(capsys, "frobnicate")
    assert status == 2
    status, _, _ = run(capsys, "catalog", "no_such_entry")
    assert status == 2
    status, _, err = run(capsys, "catalog", "addb", "--horizon", "0")
    assert status == 2 and "--horizon" in err


def test_output_flag_and_timing(capsys, tmp_path):
    target = tmp_path / "out.json"
    status = main(["--output", str(target), "norm", NEQ3])
    out, _ = capsys.readouterr()
    assert status == 0 and out == ""
    assert json.loads(target.read_text())["result"] == 2
    status, report, _ = run(capsys, "--timing", "norm", NEQ3)
    assert isinstance(report["elapsed_ms"], float)


@pytest.mark.parametrize("argv", [
    ["catalog", "maxmin_triple", "--sweep", "20", "--seed", "3"],
    ["sweep", "engulf-lemma", "--n", "20", "--seed", "1"],
    ["norm", NEQ3],
])
def test_reports_are_byte_identical(capsys, argv):
    main(argv)
    first, _ = capsys.readouterr()
    main(argv)
    second, _ = capsys.readouterr()
    assert first == second


def test_sweep_suites(capsys):
    status, report, _ = run(capsys, "sweep", "engulf-lemma", "--n", "100", "--seed", "1")
    assert status == 0 and report["result"]["passed"] and report["result"]["violations"] == 0
    assert report["seed"] == 1
    status, report, _ = run(capsys, "sweep", "prop2", "--max-side", "2")
    assert status == 0 and report["result"]["checked"] > 0 and report["seed"] is None
    status, report, _ = run(capsys, "sweep", "morphism-soundness", "--max-side", "2")
    assert status == 0 and report["result"]["passed"]
    status, report, _ = run(capsys, "sweep", "catalog", "--n", "20")
    assert status == 0 and report["mode"] in ("EXACT", "HORIZON")
    status, _, _ = run(capsys, "sweep", "unknown-suite")
    assert status == 2
