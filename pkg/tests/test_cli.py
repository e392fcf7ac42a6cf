import csv
import io
import json
import subprocess
import sys
from fractions import Fraction

import pytest

from lonelybus.cli import run


def invoke(*argv):
    out, err = io.StringIO(), io.StringIO()
    status = run(list(argv), stdout=out, stderr=err)
    return status, out.getvalue(), err.getvalue()


def doc(*argv):
    status, out, _ = invoke(*argv)
    return status, json.loads(out)


def test_tail():
    status, d = doc("tail", "--n", "3", "--k", "2", "--r", "1")
    assert status == 0
    assert d["results"]["value"] == "3/4"
    assert Fraction(d["results"]["value"]) == Fraction(3, 4)
    assert set(d) == {"command", "parameters", "results", "verdicts", "version", "timing"}


def test_pmf_json_and_csv_agree():
    status, d = doc("pmf", "--n", "3", "--k", "3")
    assert status == 0
    masses = {row["s"]: Fraction(row["value"]) for row in d["results"]["mass"]}
    assert masses == {0: Fraction(1, 9), 1: Fraction(2, 3), 2: 0, 3: Fraction(2, 9)}
    status, out, _ = invoke("pmf", "--n", "3", "--k", "3", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert {int(r["s"]): Fraction(r["value"]) for r in rows} == masses


def test_dominance():
    status, d = doc("dominance", "--n", "3", "--k-max", "2")
    assert status == 0 and d["verdicts"]["dominance"]
    rows = {(r["k"], r["r"]): r for r in d["results"]["rows"]}
    assert (rows[1, 1]["p_k"], rows[1, 1]["p_k1"]) == ("0/1", "3/4")
    assert (rows[2, 1]["p_k"], rows[2, 1]["p_k1"], rows[2, 1]["strict"]) == ("3/4", "8/9", True)
    status, out, _ = invoke("dominance", "--n", "3", "--k-max", "2", "--format", "csv")
    csv_rows = list(csv.DictReader(io.StringIO(out)))
    assert [(int(r["k"]), int(r["r"]), r["p_k"], r["p_k1"]) for r in csv_rows] == [
        (r["k"], r["r"], r["p_k"], r["p_k1"]) for r in d["results"]["rows"]
    ]


def test_expected():
    status, d = doc("expected", "--n", "2", "--k", "3")
    assert status == 0 and d["results"]["value"] == "4/3" and d["verdicts"]["identity"]


def test_verify_theorem1():
    status, d = doc("verify", "--theorem", "1", "--n", "2", "--k", "1")
    assert status == 0 and d["verdicts"]["all_claims"]
    assert all(c["holds"] for c in d["results"]["claims"])


def test_verify_failure_exit_status():
    status, d = doc("verify", "--theorem", "2", "--n", "4", "--k", "3", "--r", "2")
    assert status == 2
    failed = [c for c in d["results"]["claims"] if not c["holds"]]
    assert failed and failed[0]["counterexample"]["assignment"] == [1, 4, 4, 4]


def test_quiet():
    status, out, _ = invoke("verify", "--theorem", "1", "--n", "2", "--k", "1", "--quiet")
    assert status == 0 and out == ""
    status, out, _ = invoke("--quiet", "tail", "--n", "3", "--k", "2", "--r", "1")
    assert status == 0 and out == ""


def test_simulate_deterministic():
    args = ("simulate", "--n", "10", "--k", "5", "--r", "1", "--trials", "20000", "--seed", "3")
    _, a = doc(*args, "--workers", "2")
    _, b = doc(*args, "--workers", "2")
    assert a["results"] == b["results"]


@pytest.mark.parametrize(
    "argv",
    [
        ("tail", "--n", "3", "--k", "2"),
        ("tail", "--n", "3", "--k", "2", "--r", "7"),
        ("pmf", "--n", "1", "--k", "2"),
        ("pmf", "--n", "3", "--k", "2", "--bogus"),
        ("verify", "--theorem", "2", "--n", "3", "--k", "2"),
        ("verify", "--theorem", "1", "--n", "5", "--k", "3", "--max-enum", "10"),
        ("simulate", "--n", "3", "--k", "2", "--r", "1", "--trials", "0", "--seed", "1"),
        (),
    ],
)
def test_errors(argv):
    status, out, err = invoke(*argv)
    assert status == 1
    assert out == ""
    assert err.startswith("lonelybus: error:") and err.count("\n") == 1


def test_cap_message_names_count():
    _, _, err = invoke("verify", "--theorem", "1", "--n", "5", "--k", "3", "--max-enum", "10")
    assert str(4**5 * 3**5) in err


def test_env_cap_and_flag_precedence(monkeypatch):
    monkeypatch.setenv("LONELYBUS_MAX_ENUM", "10")
    assert invoke("verify", "--theorem", "1", "--n", "2", "--k", "2")[0] == 1
    assert invoke("verify", "--theorem", "1", "--n", "2", "--k", "2", "--max-enum", "36")[0] == 0


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "lonelybus", "tail", "--n", "2", "--k", "2", "--r", "1"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["results"]["value"] == "1/2"
