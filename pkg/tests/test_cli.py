"""End-to-end CLI behaviour: commands, formats, witnesses and exit codes."""

import json

import pytest
from click.testing import CliRunner

from qpack.cli import main
from qpack.formats import family_to_json, line_to_json, loads_family


@pytest.fixture
def runner():
    return CliRunner()


def run(runner, *args, **kwargs):
    return runner.invoke(main, list(args), catch_exceptions=False, **kwargs)


def json_lines(output):
    return [json.loads(row) for row in output.splitlines() if row.strip()]


@pytest.fixture
def geo5(tmp_path, runner):
    path = tmp_path / "geo5.json"
    result = run(runner, "construct", "--q", "5", "--out", str(path))
    assert result.exit_code == 0
    return path


class TestConstruct:
    def test_q5_summary(self, runner, tmp_path):
        path = tmp_path / "g.json"
        result = run(runner, "construct", "--q", "5", "--out", str(path))
        assert result.exit_code == 0
        summary = json_lines(result.stdout)[0]
        assert summary["points"] == 125
        assert summary["classes"] == 4
        assert summary["lines_per_class"] == 100
        family = loads_family(path.read_text())
        assert len(family.classes) == 4

    def test_non_prime_power_exits_2(self, runner):
        result = run(runner, "construct", "--q", "6")
        assert result.exit_code == 2
        assert "not a prime power" in result.output

    def test_q_too_small_exits_2(self, runner):
        assert run(runner, "construct", "--q", "2").exit_code == 2

    def test_count_option(self, runner, tmp_path):
        path = tmp_path / "g9.json"
        result = run(runner, "construct", "--q", "9", "--count", "3", "--out", str(path))
        assert result.exit_code == 0
        assert len(loads_family(path.read_text()).classes) == 3

    def test_bad_count_exits_2(self, runner):
        assert run(runner, "construct", "--q", "5", "--count", "5").exit_code == 2

    def test_stdout_mode(self, runner):
        result = run(runner, "construct", "--q", "3")
        assert result.exit_code == 0
        family = loads_family(result.stdout.splitlines()[0])
        assert len(family.classes) == 2


class TestVerify:
    def test_default_checks_pass(self, runner, geo5):
        result = run(runner, "verify", str(geo5))
        assert result.exit_code == 0
        records = json_lines(result.stdout)
        # 4 classes x (pls, order, triangle) + disjoint + union
        assert len(records) == 14
        assert all(r["verdict"] == "ok" for r in records)
        assert all("elapsed" in r for r in records)
        order_records = [r for r in records if r["check"] == "order"]
        assert all((r["s"], r["t"]) == (4, 3) for r in order_records)

    def test_gq_check_fails_with_witness(self, runner, geo5):
        result = run(runner, "verify", str(geo5), "--checks", "gq")
        assert result.exit_code == 1
        records = json_lines(result.stdout)
        assert all(r["verdict"] == "violation" for r in records)
        assert all(r["witness"]["kind"] == "gq_violation" for r in records)

    def test_counting_check_reports(self, runner, geo5):
        result = run(runner, "verify", str(geo5), "--checks", "counting")
        assert result.exit_code == 0
        records = json_lines(result.stdout)
        assert all(r["bound"] == 65 and r["points"] == 125 for r in records)
        assert all(r["equality"] is False for r in records)

    def test_injected_triangle_detected(self, runner, tmp_path, geo5):
        family = loads_family(geo5.read_text())
        cls = family.classes[0]
        # two class lines meeting at a point; the line through one other
        # point of each closes a triangle
        l1 = cls.lines[0]
        l2 = next(l for l in cls.lines if l1.intersect(l) is not None and l != l1)
        shared = l1.intersect(l2)
        x = next(p for p in l1.points() if p != shared)
        y = next(p for p in l2.points() if p != shared)
        from qpack.geometry import canonical_line

        extra = canonical_line(tuple(b - a for a, b in zip(x.coords, y.coords)), x)
        obj = family_to_json(family)
        obj["classes"]["1"].append(line_to_json(extra))
        bad = tmp_path / "bad.json"
        bad.write_text(json.dumps(obj))
        result = run(runner, "verify", str(bad), "--checks", "triangle")
        assert result.exit_code == 1
        witnesses = [r for r in json_lines(result.stdout) if r["verdict"] == "violation"]
        assert witnesses and witnesses[0]["witness"]["kind"] == "triangle"

    def test_plain_incidence_input(self, runner, tmp_path):
        path = tmp_path / "c5.txt"
        path.write_text("points 5\n0 1\n1 2\n2 3\n3 4\n4 0\n")
        result = run(runner, "verify", str(path), "--checks", "pls,order,gq")
        assert result.exit_code == 1
        by_check = {r["check"]: r for r in json_lines(result.stdout)}
        assert by_check["pls"]["verdict"] == "ok"
        assert (by_check["order"]["s"], by_check["order"]["t"]) == (1, 1)
        assert by_check["gq"]["verdict"] == "violation"

    def test_family_checks_skipped_on_plain_input(self, runner, tmp_path):
        path = tmp_path / "c4.txt"
        path.write_text("points 4\n0 1\n1 2\n2 3\n3 0\n")
        result = run(runner, "verify", str(path))
        assert result.exit_code == 0
        verdicts = {r["check"]: r["verdict"] for r in json_lines(result.stdout)}
        assert verdicts["disjoint"] == "skipped"
        assert verdicts["union"] == "skipped"

    def test_malformed_json_exits_2(self, runner, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{ this is not json")
        assert run(runner, "verify", str(path)).exit_code == 2

    def test_unknown_input_shape_exits_2(self, runner, tmp_path):
        path = tmp_path / "mystery.txt"
        path.write_text("hello\n")
        assert run(runner, "verify", str(path)).exit_code == 2

    def test_missing_file_exits_2(self, runner):
        assert run(runner, "verify", "no-such-file.json").exit_code == 2

    def test_unknown_check_exits_2(self, runner, geo5):
        assert run(runner, "verify", str(geo5), "--checks", "sanity").exit_code == 2

    def test_duplicate_point_in_line_is_malformed(self, runner, tmp_path):
        path = tmp_path / "dup.txt"
        path.write_text("points 3\n0 1 1\n1 2\n")
        assert run(runner, "verify", str(path), "--checks", "pls").exit_code == 2

    def test_exhaustive_flag(self, runner, tmp_path):
        path = tmp_path / "tri.txt"
        path.write_text("points 3\n0 1\n1 2\n0 2\n")
        result = run(runner, "verify", str(path), "--checks", "triangle", "--exhaustive")
        assert result.exit_code == 1
        record = json_lines(result.stdout)[0]
        assert record["witness"]["violations"] >= 1

    @pytest.mark.parametrize("q", [3, 4, 5, 7, 8, 9, 11, 13])
    def test_construct_verify_roundtrip(self, runner, tmp_path, q):
        path = tmp_path / f"geo{q}.json"
        assert run(runner, "construct", "--q", str(q), "--out", str(path)).exit_code == 0
        result = run(runner, "verify", str(path), "--jobs", "2")
        assert result.exit_code == 0
        records = json_lines(result.stdout)
        assert len(records) == 3 * (q - 1) + 2
        assert all(r["verdict"] == "ok" for r in records)

    def test_jobs_flag_and_env(self, runner, geo5):
        sequential = run(runner, "verify", str(geo5), "--jobs", "1")
        parallel = run(runner, "verify", str(geo5), "--jobs", "2")
        env_forced = run(runner, "verify", str(geo5), "--jobs", "4",
                         env={"QPACK_JOBS": "1"})
        assert sequential.exit_code == parallel.exit_code == env_forced.exit_code == 0

        def stripped(result):
            return [
                {k: v for k, v in r.items() if k != "elapsed"}
                for r in json_lines(result.stdout)
            ]

        assert stripped(sequential) == stripped(parallel) == stripped(env_forced)


class TestBound:
    def test_k2_r3(self, runner):
        result = run(runner, "bound", "--k", "2", "--r", "3")
        assert result.exit_code == 0
        report = json_lines(result.stdout)[0]
        assert report["q"] == 17
        assert report["bound_main"] == 4913
        assert report["winner"] == "main"

    def test_out_of_range_exits_2(self, runner):
        assert run(runner, "bound", "--k", "1", "--r", "3").exit_code == 2
        assert run(runner, "bound", "--k", "2", "--r", "2").exit_code == 2

    def test_hrs_applicability(self, runner):
        report = json_lines(run(runner, "bound", "--k", "3", "--r", "8").stdout)[0]
        assert report["hrs_applicable"] is True
        report = json_lines(run(runner, "bound", "--k", "2", "--r", "5").stdout)[0]
        assert report["hrs_applicable"] is False

    def test_constants_flow_through(self, runner):
        base = json_lines(run(runner, "bound", "--k", "2", "--r", "3").stdout)[0]
        scaled = json_lines(
            run(runner, "bound", "--k", "2", "--r", "3", "--bbl-constant", "2").stdout
        )[0]
        assert scaled["bound_bbl"]["value"] == pytest.approx(2 * base["bound_bbl"]["value"])


class TestScan:
    def test_grid_rows(self, runner):
        result = run(runner, "scan", "--k", "2..4", "--r", "3..5")
        assert result.exit_code == 0
        rows = result.stdout.strip().splitlines()
        assert rows[0].startswith("k,r,threshold,q,bound_main")
        assert len(rows) == 10  # header + 3x3 grid

    def test_rows_match_bound_command(self, runner):
        scan_rows = run(runner, "scan", "--k", "2..2", "--r", "3..3").stdout.strip().splitlines()
        cells = scan_rows[1].split(",")
        report = json_lines(run(runner, "bound", "--k", "2", "--r", "3").stdout)[0]
        assert int(cells[3]) == report["q"]
        assert int(cells[4]) == report["bound_main"]
        assert float(cells[5]) == pytest.approx(report["cap_main"])

    def test_cap_dominates_every_row(self, runner):
        rows = run(runner, "scan", "--k", "2..6", "--r", "3..6").stdout.strip().splitlines()
        for row in rows[1:]:
            cells = row.split(",")
            assert int(cells[4]) <= float(cells[5])

    def test_output_file(self, runner, tmp_path):
        out = tmp_path / "grid.csv"
        result = run(runner, "scan", "--k", "2..3", "--r", "3..4", "--out", str(out))
        assert result.exit_code == 0
        assert len(out.read_text().strip().splitlines()) == 5

    @pytest.mark.parametrize("bad", ["4..2", "x..3", "1..3"])
    def test_bad_ranges_exit_2(self, runner, bad):
        assert run(runner, "scan", "--k", bad, "--r", "3..4").exit_code == 2


class TestExponent:
    def test_alpha_one_prints_both_orientations(self, runner):
        result = run(runner, "exponent", "--alpha", "1")
        assert result.exit_code == 0
        records = json_lines(result.stdout)
        assert len(records) == 2
        assert all(r["total_degree"] == 6 for r in records)

    def test_orientation_selection(self, runner):
        result = run(runner, "exponent", "--alpha", "2", "--orientation", "high-t")
        record = json_lines(result.stdout)[0]
        assert (record["k_exponent"], record["r_exponent"]) == (4, 4)

    def test_alpha_below_one_exits_2(self, runner):
        assert run(runner, "exponent", "--alpha", "0.5").exit_code == 2

    def test_scan_mode(self, runner):
        result = run(runner, "exponent", "--scan", "--alpha-max", "3")
        record = json_lines(result.stdout)[0]
        assert record["alpha"] == 1 and record["total_degree"] == 6

    def test_needs_alpha_or_scan(self, runner):
        assert run(runner, "exponent").exit_code == 2
