import csv
import io
import json
from fractions import Fraction

import pytest

from ewenswalk.cli import format_number, run
from ewenswalk.partitions import parse_partition


def call(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_tv_exact(capsys):
    code, out, _ = call(capsys, "tv-exact", "--n", "3", "--theta", "2", "--t-max", "1")
    assert code == 0
    assert rows(out) == [{"t": "1", "tv_exact": "0.166666666667", "tv_exact_rational": "1/6"}]


def test_spectrum_exact(capsys):
    code, out, _ = call(capsys, "spectrum", "--n", "3", "--theta", "2", "--exact")
    assert code == 0
    table = rows(out)
    assert [r["eigenvalue"] for r in table] == ["1", "1/4", "0"]
    assert [parse_partition(r["partition"]) for r in table] == [(3,), (2, 1), (1, 1, 1)]


def test_spectrum_json(capsys):
    code, out, _ = call(capsys, "spectrum", "--n", "4", "--theta", "n", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data[0]["partition"] == [4] and len(data) == 5


def test_verify_dg(capsys):
    code, out, _ = call(capsys, "verify", "dg", "--n-max", "4")
    report = json.loads(out)
    assert code == 0 and report["status"] == "PASS"


@pytest.mark.parametrize(
    "argv",
    [
        ("verify", "characters", "--n", "6"),
        ("verify", "convolution", "--n", "4", "--theta", "2", "--t", "2"),
        ("verify", "matching", "--n", "5"),
    ],
)
def test_verify_suites(capsys, argv):
    code, out, _ = call(capsys, *argv)
    assert code == 0 and json.loads(out)["status"] == "PASS"


def test_verify_failure_exit_code(capsys, monkeypatch):
    import ewenswalk.oracle as oracle

    monkeypatch.setattr(oracle, "verify_matching", lambda n: {"k=0": False})
    code, out, _ = call(capsys, "verify", "matching", "--n", "3")
    assert code == 1 and json.loads(out)["status"] == "FAIL"


def test_bounds(capsys):
    code, out, _ = call(capsys, "bounds", "--n", "8", "--theta", "n", "--t-range", "1:4")
    table = rows(out)
    assert code == 0 and [r["t"] for r in table] == ["1", "2", "3", "4"]
    for r in table:
        assert float(r["lower"]) <= float(r["exact"]) <= float(r["upper"])


def test_bounds_blank_exact_above_cap(capsys, monkeypatch):
    monkeypatch.setenv("EWENSWALK_TABLE_MAX", "6")
    code, out, _ = call(capsys, "bounds", "--n", "8", "--theta", "2", "--t-range", "2:3")
    assert code == 0 and all(r["exact"] == "" for r in rows(out))


def test_cutoff_profile(tmp_path, capsys):
    path = tmp_path / "profile.csv"
    code, out, _ = call(capsys, "cutoff-profile", "--n", "8", "--out", str(path))
    summary = json.loads(out)
    assert code == 0 and summary["n"] == 8 and summary["cutoff_estimate_steps"] == 3.0
    assert "t_at_tv_half" in summary
    assert rows(path.read_text())[0]["t"] == "1"


def test_simulate_deterministic(capsys):
    argv = ("simulate", "--n", "6", "--theta", "2", "--t", "2", "--samples", "5000", "--stat", "cycle-type", "--seed", "7")
    first = call(capsys, *argv, "--threads", "1")[1]
    again = call(capsys, *argv, "--threads", "4")[1]
    assert first == again
    table = rows(first)
    assert sum(int(r["count"]) for r in table) == 5000
    assert sum(float(r["frequency"]) for r in table) == pytest.approx(1)


def test_csv_round_trip(capsys):
    from ewenswalk.mixing import total_variation_exact

    _, out, _ = call(capsys, "tv-exact", "--n", "6", "--theta", "3/2", "--t-max", "4", "--t-min", "0")
    for r in rows(out):
        exact = total_variation_exact(6, Fraction(3, 2), int(r["t"]), exact=True)
        assert Fraction(r["tv_exact_rational"]) == exact
        assert float(r["tv_exact"]) == pytest.approx(float(exact), rel=1e-11)


def test_out_file(tmp_path, capsys):
    path = tmp_path / "s.json"
    code, out, _ = call(capsys, "spectrum", "--n", "3", "--theta", "2", "--format", "json", "--out", str(path))
    assert code == 0 and out == "" and len(json.loads(path.read_text())) == 3


@pytest.mark.parametrize(
    "argv",
    [
        ("spectrum", "--n", "3", "--theta", "abc"),
        ("spectrum", "--n", "3", "--theta", "0"),
        ("spectrum", "--n", "3", "--theta", "2", "--bogus"),
        ("tv-exact", "--n", "40", "--theta", "2", "--t-max", "1"),
        ("verify", "matching", "--n", "9"),
        ("bounds", "--n", "5", "--theta", "2", "--t-range", "3:1"),
        ("frobnicate",),
        ("spectrum", "--n", "0", "--theta", "2"),
    ],
)
def test_usage_errors(capsys, argv):
    assert call(capsys, *argv)[0] == 2


def test_format_number():
    assert format_number(Fraction(1, 6)) == "1/6"
    assert format_number(Fraction(4)) == "4"
    assert format_number(1 / 3) == "0.333333333333"
    assert format_number(None) == ""
    assert format_number((3, 1)) == "3,1"
