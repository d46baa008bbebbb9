"""End-to-end command line checks via main(argv)."""

import csv
import io
import json

import pytest

from gridext import __version__
from gridext.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def parse_csv(text):
    lines = [ln for ln in text.splitlines() if ln and not ln.startswith("#")]
    return list(csv.DictReader(io.StringIO("\n".join(lines))))


class TestCount:
    def test_json_default(self, capsys):
        code, out, _ = run(capsys, "count", "--shape", "3x3")
        assert code == 0
        data = json.loads(out)
        assert data["version"] == __version__
        assert data["shape"] == [3, 3]
        assert data["count"] == "42"
        assert data["lower_factorial"] == "24"
        assert data["upper_width_power"] == str(3**9)

    def test_equilateral_flags(self, capsys):
        code, out, _ = run(capsys, "count", "--m", "2", "--n", "3")
        assert code == 0
        assert json.loads(out)["count"] == "48"

    def test_text_format(self, capsys):
        code, out, _ = run(capsys, "count", "--shape", "2x3", "--format", "text")
        assert code == 0
        assert "count: 5" in out

    def test_csv_format(self, capsys):
        code, out, _ = run(capsys, "count", "--shape", "2x2", "--format", "csv")
        assert code == 0
        rows = parse_csv(out)
        assert rows[0]["count"] == "2"
        assert rows[0]["shape"] == "2x2"

    def test_out_file(self, capsys, tmp_path):
        target = tmp_path / "count.json"
        code, out, _ = run(capsys, "count", "--shape", "3x3", "--out", str(target))
        assert code == 0
        assert json.loads(target.read_text())["count"] == "42"

    def test_shape_conflict(self, capsys):
        code, _, err = run(capsys, "count", "--shape", "3x3", "--m", "3", "--n", "2")
        assert code == 2
        assert "error" in err

    def test_shape_missing(self, capsys):
        code, _, err = run(capsys, "count")
        assert code == 2

    def test_bad_shape_token(self, capsys):
        code, _, err = run(capsys, "count", "--shape", "3xx3")
        assert code == 2

    def test_cap_exhausted(self, capsys):
        code, _, err = run(capsys, "count", "--shape", "3x3x3", "--cap", "10")
        assert code == 3
        assert "cap" in err


class TestEnumerate:
    def test_diamond(self, capsys):
        code, out, _ = run(capsys, "enumerate", "--shape", "2x2")
        assert code == 0
        assert out.splitlines() == ["0 1 2 3", "0 2 1 3"]

    def test_cap(self, capsys):
        code, _, err = run(capsys, "enumerate", "--shape", "3x3", "--cap", "5")
        assert code == 3


class TestSample:
    def test_exact_stats(self, capsys):
        code, out, _ = run(
            capsys, "sample", "--shape", "3x3", "--samples", "200", "--seed", "7"
        )
        assert code == 0
        data = json.loads(out)
        assert data["config"]["method"] == "exact"
        assert data["config"]["samples"] == 200
        assert data["config"]["seed"] == 7
        assert 2.0 < data["mean_degree"] < 6.0
        assert len(data["mean_pits_profile"]) == 9
        assert sum(data["histogram"].values()) == 200

    def test_deterministic(self, capsys):
        _, out1, _ = run(capsys, "sample", "--shape", "3x3", "--samples", "50", "--seed", "3")
        _, out2, _ = run(capsys, "sample", "--shape", "3x3", "--samples", "50", "--seed", "3")
        assert out1 == out2

    def test_out_file_extensions(self, capsys, tmp_path):
        target = tmp_path / "draws.txt"
        code, out, _ = run(
            capsys,
            "sample", "--shape", "2x2x2", "--samples", "5", "--seed", "1",
            "--out", str(target),
        )
        assert code == 0
        lines = target.read_text().splitlines()
        assert len(lines) == 5
        for line in lines:
            idxs = [int(v) for v in line.split()]
            assert sorted(idxs) == list(range(8))
        json.loads(out)  # stats still go to stdout

    def test_mcmc_method(self, capsys):
        code, out, _ = run(
            capsys,
            "sample", "--shape", "2x2", "--method", "mcmc", "--samples", "20",
            "--mcmc-steps", "40", "--seed", "5",
        )
        assert code == 0
        data = json.loads(out)
        assert data["config"]["method"] == "mcmc"
        assert data["config"]["mcmc_steps"] == 40


@pytest.fixture()
def extension_file(tmp_path):
    """Five [3]^2 extensions in canonical coordinate syntax."""
    from gridext import GridShape, enumerate_extensions, write_extensions_file

    s = GridShape((3, 3))
    exts = list(enumerate_extensions(s))[:5]
    path = tmp_path / "exts.txt"
    write_extensions_file(path, exts)
    return path


class TestJumpsAndPits:
    def test_jumps_csv(self, capsys, extension_file):
        code, out, _ = run(capsys, "jumps", "--shape", "3x3", "--in", str(extension_file))
        assert code == 0
        rows = parse_csv(out)
        assert len(rows) == 5
        assert set(rows[0]) == {"extension", "degree", "jump_times", "pits"}
        for row in rows:
            assert int(row["degree"]) == len(row["jump_times"].split())

    def test_jumps_json(self, capsys, extension_file):
        code, out, _ = run(
            capsys, "jumps", "--shape", "3x3", "--in", str(extension_file), "--format", "json"
        )
        assert code == 0
        data = json.loads(out)
        assert len(data) == 5
        assert data[0]["extension"] == 1

    def test_jumps_rejects_text_format(self, capsys, extension_file):
        code, _, err = run(
            capsys, "jumps", "--shape", "3x3", "--in", str(extension_file), "--format", "text"
        )
        assert code == 2

    def test_pits_wide(self, capsys, extension_file):
        code, out, _ = run(capsys, "pits", "--shape", "3x3", "--in", str(extension_file))
        assert code == 0
        rows = parse_csv(out)
        assert len(rows) == 5
        assert rows[0]["t9"] == "0"

    def test_pits_mean(self, capsys, extension_file):
        code, out, _ = run(
            capsys, "pits", "--shape", "3x3", "--in", str(extension_file), "--mean"
        )
        assert code == 0
        rows = parse_csv(out)
        assert len(rows) == 9
        assert rows[0]["mean_pits"] == "2"  # two pits after the forced bottom

    def test_missing_file(self, capsys, tmp_path):
        code, _, err = run(capsys, "jumps", "--shape", "3x3", "--in", str(tmp_path / "nope"))
        assert code == 2


class TestGraph:
    def test_stats_payload(self, capsys):
        code, out, _ = run(capsys, "graph", "--shape", "3x3")
        assert code == 0
        data = json.loads(out)
        assert data["vertices"] == 42
        assert data["edges"] == 84
        assert data["min_deg"] == 2
        assert data["max_deg"] == 6
        assert data["avg_deg"] == 4.0
        assert data["avg_deg_exact"] == "4"
        assert data["connected"] is True

    def test_dot_output(self, capsys, tmp_path):
        dot = tmp_path / "g.dot"
        code, _, _ = run(capsys, "graph", "--shape", "2x2", "--dot", str(dot))
        assert code == 0
        text = dot.read_text()
        assert text.startswith("graph") and "v0 -- v1;" in text


class TestBounds:
    def test_base_reports(self, capsys):
        code, out, _ = run(capsys, "bounds", "--m", "3", "--n", "2")
        assert code == 0
        data = json.loads(out)
        assert [r["name"] for r in data] == [
            "log_count_lower_bound",
            "avg_degree_lower_bound",
            "almost_regular_fraction",
        ]
        assert all(r["vacuous"] for r in data)

    def test_with_R_and_delta(self, capsys):
        code, out, _ = run(
            capsys, "bounds", "--m", "3", "--n", "2", "--R", "4", "--delta", "4"
        )
        data = json.loads(out)
        names = [r["name"] for r in data]
        assert "pits_fraction_bound" in names and "markov_tail_probability" in names
        tail = next(r for r in data if r["name"] == "markov_tail_probability")
        assert tail["value"] == 0.25 and not tail["vacuous"]

    def test_csv(self, capsys):
        code, out, _ = run(capsys, "bounds", "--m", "3", "--n", "2", "--format", "csv")
        rows = parse_csv(out)
        assert len(rows) == 3 and rows[0]["name"] == "log_count_lower_bound"


class TestVerify:
    def test_counting_suite_text(self, capsys):
        code, out, _ = run(capsys, "verify", "--suite", "counting")
        assert code == 0
        assert "PASS" in out and "FAIL" not in out
        assert __version__ in out

    def test_counting_suite_json(self, capsys):
        code, out, _ = run(capsys, "verify", "--suite", "counting", "--format", "json")
        assert code == 0
        reports = json.loads(out)
        assert reports[0]["version"] == __version__
        assert reports[0]["passed"] is True
        assert reports[0]["config"]["seed"] == 42
        assert all(c["passed"] for c in reports[0]["checks"])

    def test_unknown_suite(self, capsys):
        code, _, err = run(capsys, "verify", "--suite", "bogus")
        assert code == 2


class TestConjectureScan:
    def test_small_scan(self, capsys):
        code, out, _ = run(capsys, "conjecture-scan", "--max-size", "9", "--samples", "50")
        assert code == 0
        assert out.startswith("#")
        rows = parse_csv(out)
        got = {(r["m"], r["n"]): r for r in rows}
        assert set(got) == {("2", "2"), ("2", "3"), ("3", "2")}
        assert all(r["method"] == "exhaustive" for r in rows)
        diamond = got[("2", "2")]
        assert float(diamond["mean_degree"]) == 1.0
        assert float(diamond["ratio"]) == 0.25

    def test_json_format(self, capsys):
        code, out, _ = run(
            capsys, "conjecture-scan", "--max-size", "4", "--format", "json"
        )
        data = json.loads(out)
        assert data["version"] == __version__
        assert data["rows"][0]["m"] == 2 and data["rows"][0]["n"] == 2


class TestTopLevel:
    def test_version_flag(self, capsys):
        code, out, _ = run(capsys, "--version")
        assert code == 0
        assert __version__ in out

    def test_unknown_command(self, capsys):
        code, _, err = run(capsys, "frobnicate")
        assert code == 2

    def test_no_command(self, capsys):
        code, _, err = run(capsys)
        assert code == 2
