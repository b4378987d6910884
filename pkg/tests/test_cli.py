import json
import subprocess
import sys

import pytest

from lhbound.cli import main, parse_range, ConfigError


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_range():
    assert parse_range("4") == [4]
    assert parse_range("0..3") == [0, 1, 2, 3]
    assert parse_range("2,5") == [2, 5]
    with pytest.raises(ConfigError):
        parse_range("a..b")


def test_analyze_hamming(capsys):
    code, out, _ = run(capsys, "analyze", "--family", "hamming", "--m", "3", "--weights", "0..7", "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "weight,total,E0,E1,M1,LH"
    assert lines[3] == "2,21,0,21,21,21"
    assert len(lines) == 9


def test_analyze_rm(capsys):
    code, out, _ = run(capsys, "analyze", "--family", "rm", "--r", "1", "--rm-m", "4", "--weights", "4", "--format", "json")
    assert code == 0
    (row,) = json.loads(out)
    assert row["weight"] == "4" and int(row["E1"]) == int(row["M1"]) == int(row["LH"])
    assert 600 <= int(row["E1"]) <= 1050


def test_analyze_deterministic(capsys):
    args = ("analyze", "--family", "random", "--n", "12", "--k", "4", "--seed", "1")
    outs = {run(capsys, *args)[1] for _ in range(2)}
    outs.add(run(capsys, *args, "--threads", "1")[1])
    outs.add(run(capsys, *args, "--threads", "4")[1])
    assert len(outs) == 1


def test_bounds_rm(capsys):
    code, out, _ = run(capsys, "bounds", "--family", "rm", "--r", "1", "--rm-m", "4", "--ground-truth", "--format", "json")
    assert code == 0
    d = json.loads(out)
    assert d["condition"]["holds"] is True
    assert 600 <= int(d["count"]) <= 1050 and d["verdict"] == "PASS"


def test_bounds_bch63(capsys):
    code, out, _ = run(capsys, "bounds", "--family", "bch", "--bch-m", "6", "--design-distance", "15", "--format", "json")
    assert code == 0
    assert json.loads(out)["condition"] == {"lhs": "6435", "rhs": "2603", "holds": True}


def test_bounds_hamming_text(capsys):
    code, out, _ = run(capsys, "bounds", "--family", "hamming", "--m", "3", "--ground-truth", "--i", "2..3")
    assert code == 0
    assert "condition   3 > 13: False" in out
    assert "verdict     PASS (upper-only)" in out
    assert "i=3:" in out


def test_bounds_trial_set_file(capsys, tmp_path):
    p = tmp_path / "t.txt"
    p.write_text("1111\n")
    code, out, _ = run(capsys, "bounds", "--family", "explicit", "--generator-rows", "1111",
                       "--trial-set", "file", "--trial-set-file", str(p), "--format", "json")
    assert code == 0 and json.loads(out)["trial_set"] == "EXPLICIT"
    p.write_text("1100\n")
    assert run(capsys, "bounds", "--family", "explicit", "--generator-rows", "1111",
               "--trial-set", "file", "--trial-set-file", str(p))[0] == 2


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "--family", "hamming", "--m", "3", "--suite", "all")
    assert code == 0
    assert "FAIL" not in out
    code, out, _ = run(capsys, "verify", "--family", "random", "--n", "12", "--k", "5", "--seed", "7", "--suite", "monotone")
    assert code == 0 and out.count("PASS") == 1


def test_verify_unknown_suite(capsys):
    assert run(capsys, "verify", "--family", "hamming", "--m", "3", "--suite", "bogus")[0] == 2


def test_table(capsys):
    code, out, _ = run(capsys, "table", "--r", "1", "--rm-m", "3..6", "--format", "csv")
    assert code == 0
    flags = [line.split(",")[-1] for line in out.strip().splitlines()[1:]]
    assert flags == ["False", "True", "True", "True"]
    code, out, _ = run(capsys, "table", "--r", "2", "--rm-m", "5..6", "--format", "csv")
    assert [line.split(",")[-1] for line in out.strip().splitlines()[1:]] == ["False", "True"]
    code, out, _ = run(capsys, "table", "--r", "2", "--rm-m", "12", "--format", "csv")
    row = out.strip().splitlines()[1].split(",")
    assert row[3] == "79" and row[-1] == "UNKNOWN"


def test_malformed_spec_names_field(capsys, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"family": "rm", "r": 1}')
    code, _, err = run(capsys, "analyze", "--spec", str(p))
    assert code == 2 and "m" in err
    p.write_text('{"family": "random", "n": 10, "k": "five", "seed": 1}')
    code, _, err = run(capsys, "analyze", "--spec", str(p))
    assert code == 2 and "k" in err


@pytest.mark.parametrize(
    "argv",
    [
        ("analyze",),
        ("analyze", "--family", "rm", "--r", "1"),
        ("analyze", "--family", "hamming", "--m", "3", "--weights", "9"),
        ("analyze", "--family", "hamming", "--m", "3", "--threads", "0"),
        ("analyze", "--family", "hamming", "--m", "3", "--k-enum-max", "0"),
        ("analyze", "--family", "bch", "--bch-m", "4", "--design-distance", "4"),
        ("analyze", "--spec", "/nonexistent.json"),
        ("bogus-command",),
    ],
)
def test_config_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_resource_refusal(capsys):
    code, _, err = run(capsys, "analyze", "--family", "bch", "--bch-m", "6", "--design-distance", "15", "--weights", "8")
    assert code == 3
    assert "refused" in err


def test_out_writes_file_only(capsys, tmp_path):
    p = tmp_path / "o.csv"
    code, out, _ = run(capsys, "analyze", "--family", "hamming", "--m", "3", "--format", "csv", "--out", str(p))
    assert code == 0 and out == ""
    assert p.read_text().startswith("weight,total")


def test_spec_file(capsys, tmp_path):
    p = tmp_path / "c.json"
    p.write_text('{"family": "hamming", "m": 3}')
    a = run(capsys, "bounds", "--spec", str(p), "--format", "json")[1]
    b = run(capsys, "bounds", "--family", "hamming", "--m", "3", "--format", "json")[1]
    assert a == b


def test_env_threads_and_entry_point():
    args = [sys.executable, "-m", "lhbound.cli", "bounds", "--family", "rm", "--r", "1", "--rm-m", "4",
            "--ground-truth", "--format", "json"]
    outs = set()
    for threads in ("1", "3"):
        res = subprocess.run(args, capture_output=True, env={"LHBOUND_THREADS": threads, "PATH": ""}, check=False)
        assert res.returncode == 0, res.stderr
        outs.add(res.stdout)
    assert len(outs) == 1
