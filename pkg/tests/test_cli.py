import json
import subprocess
import sys

import pytest

from spabel.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, "--format", "json", *argv)
    return code, json.loads(out) if out else None, err


def test_verify_identities(capsys):
    code, rep, _ = run_json(capsys, "verify-identities", "--g", "3", "--L", "3")
    assert code == 0 and rep["failures"] == 0 and rep["checked"] > 0


def test_text_output(capsys):
    code, out, _ = run(capsys, "verify-identities", "--g", "3", "--L", "5")
    assert code == 0
    assert "passed: true" in out and out.rstrip().splitlines()[-1].startswith("elapsed:")


def test_format_after_subcommand(capsys):
    code, out, _ = run(capsys, "orders", "--g", "3", "--L", "3", "--n", "1", "--format", "json")
    assert code == 0 and json.loads(out)["factored"]["total_order"] == "3^41"


def test_hypothesis_exit(capsys):
    code, out, err = run(capsys, "verify-identities", "--g", "2", "--L", "3")
    assert code == 3 and out == ""
    assert json.loads(err)["error"] == "hypothesis"
    code, _, _ = run(capsys, "orders", "--g", "3", "--L", "4", "--n", "1")
    assert code == 3
    code, _, _ = run(capsys, "orders", "--g", "3", "--L", "4", "--n", "1", "--allow-outside")
    assert code == 0


def test_budget_exit(capsys):
    code, _, err = run(capsys, "oracle", "--g", "3", "--L", "3", "--mode", "parametrize")
    assert code == 4 and json.loads(err)["error"] == "budget"


def test_usage_exit(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["oracle", "--g", "1", "--L", "3", "--mode", "bogus"])
    assert exc.value.code == 2
    assert json.loads(capsys.readouterr().err)["error"] == "usage"


def test_missing_file_exit(capsys, tmp_path):
    code, _, err = run(capsys, "check-cert", str(tmp_path / "nope.jsonl"))
    assert code == 5 and json.loads(err)["error"] == "input"
    bad = tmp_path / "bad.jsonl"
    bad.write_text("{not json\n")
    code, _, _ = run(capsys, "check-cert", str(bad))
    assert code == 5


def test_certify_round_trip(capsys, tmp_path):
    path = tmp_path / "certs.jsonl"
    code, rep, _ = run_json(capsys, "certify", "--g", "3", "--L", "5", "--out", str(path))
    assert code == 0 and rep["count"] == 12
    code, rep, _ = run_json(capsys, "check-cert", str(path))
    assert code == 0 and rep["failures"] == 0 and rep["count"] == 12

    lines = path.read_text().splitlines()
    obj = json.loads(lines[4])
    obj["word"][0][1][0][3] = str(int(obj["word"][0][1][0][3]) + 5)
    lines[4] = json.dumps(obj)
    path.write_text("\n".join(lines) + "\n")
    code, rep, _ = run_json(capsys, "check-cert", str(path))
    assert code == 1 and rep["failures"] == 1
    assert [r["ok"] for r in rep["results"]].index(False) == 4


def test_empty_cert_file_fails(capsys, tmp_path):
    path = tmp_path / "empty.jsonl"
    path.write_text("")
    code, rep, _ = run_json(capsys, "check-cert", str(path))
    assert code == 1 and rep["count"] == 0


def test_oracle_modes(capsys):
    code, rep, _ = run_json(capsys, "oracle", "--g", "1", "--L", "3", "--mode", "parametrize")
    assert code == 0 and rep["order"] == "27" and rep["flags"]
    code, rep, _ = run_json(capsys, "oracle", "--g", "1", "--L", "3", "--mode", "plain")
    assert rep["order"] == "9" and rep["equals_kernel"] is False and rep["note"]


def test_coinvariants_and_phi(capsys):
    code, rep, _ = run_json(capsys, "coinvariants", "--g", "3", "--L", "3", "--module", "wedge2")
    assert code == 0 and rep["structure"]["free_rank"] >= 1
    code, rep, _ = run_json(capsys, "phi-check", "--g", "3", "--L", "3", "--samples", "20")
    assert code == 0 and rep["samples"] == 20


def test_json_is_byte_identical():
    cmd = [sys.executable, "-m", "spabel", "--format", "json", "phi-check",
           "--g", "3", "--L", "5", "--samples", "30", "--seed", "7"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and b"passed" in a
