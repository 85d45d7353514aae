import csv
import json
import subprocess
import sys

import pytest

from revsynth.cli import EXIT_BUDGET, EXIT_INPUT, EXIT_MISMATCH, EXIT_OK, EXIT_WIDTH, main
from revsynth.io import write_truth_table
from revsynth.truth_table import TruthTable


@pytest.fixture
def table(tmp_path):
    def make(tt, name="t.txt"):
        path = tmp_path / name
        path.write_text(write_truth_table(tt))
        return path

    return make


def test_synth_identity(tmp_path, table):
    out = tmp_path / "id.tfc"
    assert main(["synth", str(table(TruthTable.identity(3))), "--q", "32", "--out", str(out)]) == EXIT_OK
    report = json.loads(out.with_suffix(".json").read_text())
    assert report["Q"] <= 32
    assert report["verified"] is True
    for key in ("L", "D", "Q", "t1", "t2", "t3", "params", "bounds"):
        assert key in report
    assert main(["verify", str(out), str(table(TruthTable.identity(3)))]) == EXIT_OK


def test_synth_budget_too_small(table, capsys):
    assert main(["synth", str(table(TruthTable.identity(3))), "--q", "2"]) == EXIT_BUDGET
    assert "minimum feasible budget is 7" in capsys.readouterr().err


def test_strategy_recorded(tmp_path, table):
    out = tmp_path / "c.tfc"
    main(["synth", str(table(TruthTable.random(4, 0))), "--q", "40", "--strategy", "2", "--out", str(out)])
    assert json.loads(out.with_suffix(".json").read_text())["params"]["strategy"] == 2


def test_synth_with_k_and_group_size(tmp_path, table):
    out = tmp_path / "c.tfc"
    code = main(["synth", str(table(TruthTable.random(5, 0))), "--q", "80", "--k", "2", "--group-size", "2",
                 "--out", str(out), "--report", str(tmp_path / "r.json")])
    assert code == EXIT_OK
    params = json.loads((tmp_path / "r.json").read_text())["params"]
    assert (params["k"], params["s"]) == (2, 2)


def test_synth_parse_error(tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("n 2\n00\n01\n")
    assert main(["synth", str(bad), "--q", "30"]) == EXIT_INPUT


def test_verify_detects_deleted_gate(tmp_path, table, capsys):
    tt = TruthTable.random(4, 3)
    out = tmp_path / "c.tfc"
    main(["synth", str(table(tt)), "--q", "40", "--out", str(out)])
    lines = out.read_text().splitlines()
    body = lines.index("BEGIN")
    target = next(i for i, line in enumerate(lines) if i > body and line.startswith("t3") and "y" in line)
    del lines[target]
    out.write_text("\n".join(lines) + "\n")
    capsys.readouterr()
    assert main(["verify", str(out), str(table(tt))]) == EXIT_MISMATCH
    assert "mismatch" in capsys.readouterr().out


def test_verify_width_mismatch(tmp_path, table):
    out = tmp_path / "c.tfc"
    main(["synth", str(table(TruthTable.identity(3))), "--q", "32", "--out", str(out)])
    assert main(["verify", str(out), str(table(TruthTable.identity(2), "two.txt"))]) == EXIT_WIDTH


def test_simulate(tmp_path, table, capsys):
    tt = TruthTable.random(3, 8)
    out = tmp_path / "c.tfc"
    main(["synth", str(table(tt)), "--q", "30", "--out", str(out)])
    capsys.readouterr()
    assert main(["simulate", str(out)]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines == [f"{x:03b} -> {tt(x):03b}" for x in range(8)]
    assert main(["simulate", str(out), "--input", "110", "--state"]) == EXIT_OK
    assert capsys.readouterr().out.startswith(f"110 -> {tt(6):03b}  [")
    assert main(["simulate", str(out), "--input", "1101"]) == EXIT_WIDTH


@pytest.mark.parametrize(
    "args,expected",
    [
        (["8", "160"], {"l_shannon_upper": "8448", "d_shannon_upper": "2304"}),
        (["8", "32", "--t", "4"], {"l_conj": "288", "d_conj": "72"}),
    ],
)
def test_bounds_values(args, expected, capsys):
    assert main(["bounds", *args]) == EXIT_OK
    rows = {line.split()[0]: line.split()[1:] for line in capsys.readouterr().out.splitlines()}
    for name, value in expected.items():
        assert rows[name] == [value, "valid"]


def test_bounds_invalid_theorem_domain(capsys):
    main(["bounds", "8", "64", "--json"])
    data = json.loads(capsys.readouterr().out)
    assert data["l_shannon_upper"]["valid"] is False
    assert data["d_shannon_upper"]["valid"] is False


def test_bench_sweep(tmp_path):
    out = tmp_path / "b.csv"
    assert main(["bench", "--n-list", "4", "--q-grid", "33,40,64,128", "--strategies", "1,2", "--csv", str(out)]) == 0
    rows = list(csv.DictReader(out.open()))
    assert len(rows) == 8
    assert list(rows[0]) == "n,q,strategy,k,s,L,D,Q,t1,t2,t3,L_bound,D_bound,valid".split(",")
    assert [(r["q"], r["strategy"]) for r in rows] == [(q, s) for q in ("33", "40", "64", "128") for s in ("1", "2")]
    for r in rows:
        assert int(r["Q"]) <= int(r["q"])
        assert r["valid"] == ("true" if int(r["q"]) > 32 else "false")


def test_bench_flags_small_budgets(capsys):
    main(["bench", "--n-list", "3", "--q-grid", "20,24,25", "--strategies", "1"])
    rows = list(csv.DictReader(capsys.readouterr().out.splitlines()))
    assert [r["valid"] for r in rows] == ["false", "false", "true"]


def test_bench_parallel_matches_serial(tmp_path):
    args = ["bench", "--n-list", "3,4", "--q-grid", "30,40,60", "--seed", "3"]
    main(args + ["--csv", str(tmp_path / "a.csv")])
    main(args + ["--csv", str(tmp_path / "b.csv"), "--jobs", "2"])
    assert (tmp_path / "a.csv").read_bytes() == (tmp_path / "b.csv").read_bytes()


def test_console_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "revsynth.cli", "bounds", "8", "32", "--t", "4"],
                          capture_output=True, text=True, check=True)
    assert "288" in proc.stdout
