import json
import subprocess
import sys

import pytest

from crr import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_zeros_json(capsys):
    code, out = run(capsys, "zeros", "--n", "30", "--lambda", "5", "--eta", "2", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and set(doc) == {"meta", "data"}
    assert len(doc["data"]) == 30
    assert doc["data"][0]["x"] == pytest.approx(-2.94731, abs=5e-5)


def test_degree_one(capsys):
    code, out = run(capsys, "zeros", "--n", "1", "--lambda", "2", "--eta", "1")
    lines = out.strip().splitlines()
    assert lines[0] == "lambda,eta,k,x,theta"
    assert lines[1].split(",")[3] == "0.5"


def test_bounds(capsys):
    code, out = run(capsys, "bounds", "--n", "4", "--lambda", "1.5", "--eta", "0", "--format", "json")
    row = json.loads(out)["data"][0]
    assert row["lower"] == pytest.approx(-1.41421, abs=5e-6) and row["upper"] == pytest.approx(1.41421, abs=5e-6)


def test_full_precision_numbers(capsys):
    _, out = run(capsys, "bounds", "--n", "4", "--lambda", "1.5", "--eta", "0", "--format", "json")
    text = out.split('"lower":')[1].split(",")[0].strip()
    assert len(text.lstrip("-").replace(".", "")) >= 12


def test_usage_errors_exit_2(capsys):
    for argv in (["bounds", "--n", "3", "--lambda", "1"], ["zeros", "--n", "4", "--lambda", "-1"],
                 ["zeros", "--n", "4"], ["table", "--id", "3"], ["measure", "--lambda", "0.4"]):
        with pytest.raises(SystemExit) as exc:
            cli.main(argv)
        assert exc.value.code == 2


def test_deterministic_output(tmp_path):
    paths = [tmp_path / f"out{i}.json" for i in range(2)]
    for p in paths:
        assert cli.main(["table", "--id", "2", "--format", "json", "--output", str(p)]) == 0
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_table2_discrepancy_note(capsys):
    code, out = run(capsys, "table", "--id", "2", "--format", "json")
    doc = json.loads(out)
    row = next(r for r in doc["data"] if r["eta"] == 5.0)
    assert "suspect" in row["note"] and row["delta_x_min"] is None
    assert row["RRY_min"] == pytest.approx(0.53011, abs=5e-6)
    assert row["RRY_max"] == pytest.approx(8.80322, abs=5e-6)
    assert "discrepancy" in doc["meta"]


def test_table1_columns(capsys):
    _, out = run(capsys, "table", "--id", "1")
    header = out.splitlines()[0].split(",")
    for col in ("lambda", "x_min", "RRY_min", "x_max", "RRY_max", "delta_x_max", "printed_JT_max"):
        assert col in header


def test_lambda_sweep(capsys):
    code, out = run(capsys, "zeros", "--n", "5", "--eta", "1", "--lambda-range", "1", "3", "3")
    lines = out.strip().splitlines()
    assert code == 0 and len(lines) == 1 + 15 and "RRY_max" in lines[0]


def test_eval_and_measure(capsys):
    code, out = run(capsys, "eval", "--n", "2", "--lambda", "1", "--x", "0")
    assert out.splitlines()[1].split(",")[1] == "-0.25"
    code, out = run(capsys, "measure", "--lambda", "1.5", "--eta", "0.5", "--n-max", "2", "--format", "json")
    assert json.loads(out)["data"][0]["value"] == pytest.approx(1.0, abs=1e-8)


def test_csv_quoting(capsys):
    _, out = run(capsys, "table", "--id", "2")
    assert '"' not in out.splitlines()[0]


def test_console_entry_point():
    out = subprocess.run([sys.executable, "-m", "crr.cli", "asymp", "--branch", "eta", "--format", "json"],
                         capture_output=True, text=True, check=True)
    assert json.loads(out.stdout)["meta"]["eta_branch"]["slope"] == pytest.approx(-1.0, abs=0.15)
