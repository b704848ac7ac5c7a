import csv
import io
import json
from pathlib import Path

import pytest

from nestcan.cli import main, run

GOLDEN = Path(__file__).parent / "golden"


@pytest.mark.parametrize("bits", ["11111011", "00101111"])
def test_analyze_golden(bits):
    code, out = run(["analyze", "--tt", bits, "--format", "json"])
    assert code == 0
    assert json.loads(out) == json.loads((GOLDEN / f"analyze_{bits}.json").read_text())


def test_analyze_text_f1():
    code, out = run(["analyze", "--tt", "11111011"])
    assert code == 0
    assert "layer number: 1" in out and "weight: 7" in out and "average sensitivity: 3/4" in out


def test_analyze_presentation_f2():
    code, out = run(["analyze", "--tt", "00101111"])
    assert "presentation: {(1,2,3):(1,0,1):(1,0,0)}" in out


def test_analyze_hex():
    code, out = run(["analyze", "--tt", "0xfb", "--n", "3", "--format", "json"])
    assert code == 0 and json.loads(out)["bits"] == "11111011"


def test_analyze_not_ncf():
    code, out = run(["analyze", "--tt", "0110", "--format", "json"])
    report = json.loads(out)
    assert code == 0 and report["is_ncf"] is False and "form" not in report


def test_analyze_not_reduced():
    code, out = run(["analyze", "--tt", "00110011", "--format", "json"])
    assert code == 0 and json.loads(out)["is_ncf"] is False
    code, out = run(["analyze", "--tt", "00110011", "--reduce", "--format", "json"])
    report = json.loads(out)
    assert report["is_ncf"] and report["kept_variables"] == [2] and report["n"] == 1
    assert report["degenerate"]


def test_analyze_oracle():
    code, out = run(["analyze", "--tt", "00101111", "--oracle", "--format", "json"])
    oracle = json.loads(out)["oracle"]
    assert code == 0 and oracle["agrees"]
    assert set(oracle["checks"]) == {"weight", "average_sensitivity", "activities", "is_ncf"}


@pytest.mark.parametrize("bits", ["0121", "011", "", "0x1g"])
def test_analyze_bad_input(bits):
    assert run(["analyze", "--tt", bits])[0] == 2


def test_usage_error():
    assert run(["analyze"])[0] == 2
    assert run(["frobnicate"])[0] == 2


def test_count():
    code, out = run(["count", "--n", "3", "--r", "2", "--format", "json"])
    assert json.loads(out) == [{"n": 3, "r": 2, "count": 48}]
    code, out = run(["count", "--n", "4", "--census", "--recursive", "--format", "csv"])
    rows = list(csv.DictReader(io.StringIO(out)))
    assert rows[-1] == {"n": "4", "r": "", "count": "736", "recursive": "736", "census": "736"}
    assert sum(int(r["count"]) for r in rows[:-1]) == 736


def test_count_text():
    code, out = run(["count", "--n", "5"])
    last = out.strip().splitlines()[-1].split()
    assert code == 0 and last == ["5", "all", "10624"]


def test_count_errors():
    assert run(["count", "--n", "5", "--census"])[0] == 2
    assert run(["count", "--n", "3", "--r", "2", "--census"])[0] == 2
    assert run(["count", "--n", "1"])[0] == 2


def test_enumerate():
    code, out = run(["enumerate", "--n", "2", "--format", "csv"])
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 8 and len({r["bits"] for r in rows}) == 8
    assert run(["enumerate", "--n", "6"])[0] == 2


def test_sample_seeded(monkeypatch):
    a = run(["sample", "--n", "6", "--count", "5", "--seed", "3", "--format", "json"])[1]
    assert a == run(["sample", "--n", "6", "--count", "5", "--seed", "3", "--format", "json"])[1]
    monkeypatch.setenv("NESTCAN_SEED", "3")
    assert a == run(["sample", "--n", "6", "--count", "5", "--format", "json"])[1]
    forms = [json.loads(line)["form"] for line in a.splitlines()]
    assert len(forms) == 5
    code, out = run(["sample", "--n", "5", "--r", "4", "--format", "json"])
    assert len(json.loads(out)["form"]["layers"]) == 4


def test_network(tmp_path):
    path = tmp_path / "net.json"
    assert run(["network", "--nodes", "8", "--k", "3", "--layer", "2", "--seed", "1",
                "--out", str(path)])[0] == 0
    net = json.loads(path.read_text())
    assert net["n"] == 8 and net["k"] == 3 and len(net["nodes"]) == 8
    assert run(["network", "--nodes", "8", "--k", "3", "--layer", "3"])[0] == 2


def test_scan():
    code, out = run(["scan-max-sensitivity", "--n", "6", "--format", "json"])
    (row,) = json.loads(out)
    assert code == 0 and row["max"] == "21/16" and row["matches"]
    assert "(1,2,1,2)" in row["argmax"]
    code, out = run(["scan-max-sensitivity", "--n-min", "3", "--n-max", "12", "--strict",
                     "--format", "csv"])
    assert code == 0 and len(out.strip().splitlines()) == 11


def test_derrida_byte_identical(tmp_path):
    args = ["derrida", "--nodes", "16", "--k", "3", "--layer", "1", "--networks", "8",
            "--pairs", "8", "--seed", "5"]
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert run(args + ["--out", str(a)])[0] == 0
    assert run(args + ["--out", str(b), "--threads", "2"])[0] == 0
    assert a.read_bytes() == b.read_bytes()
    code, out = run(args)
    assert out.encode() == a.read_bytes()


def test_derrida_normalized():
    code, out = run(["derrida", "--nodes", "8", "--k", "2", "--networks", "2", "--pairs", "2",
                     "--normalized"])
    header = [ln for ln in out.splitlines() if not ln.startswith("#")][0]
    assert header == "d,mean_next,samples,norm_d,norm_mean_next"


def test_io_error(tmp_path):
    bad = tmp_path / "missing" / "x.csv"
    code, _ = run(["derrida", "--nodes", "8", "--k", "2", "--networks", "1", "--pairs", "1",
                   "--out", str(bad)])
    assert code == 3


def test_main_writes_to_stream():
    buf = io.StringIO()
    assert main(["count", "--n", "2", "--format", "json"], buf) == 0
    assert json.loads(buf.getvalue())[-1]["count"] == 8
