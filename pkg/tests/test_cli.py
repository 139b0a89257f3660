import csv
import io
import xml.etree.ElementTree as ET

import pytest

from qnbench.cli import main


def _read(path):
    with open(path, "r", encoding="utf-8") as stream:
        return stream.read()


class TestSolve:
    def test_converged_run_exits_zero(self, capsys):
        code = main(["solve", "--problem", "hager", "--solver", "two-phase"])
        out = capsys.readouterr().out
        assert code == 0
        assert "final grad norm" in out
        assert "converged" in out

    def test_unknown_problem_exits_two_with_suggestions(self, capsys):
        code = main(["solve", "--problem", "nosuch", "--solver", "bfgs"])
        err = capsys.readouterr().err
        assert code == 2
        assert "unknown problem" in err

    def test_unknown_solver_rejected(self, capsys):
        code = main(["solve", "--problem", "hager", "--solver", "newton"])
        assert code == 2

    def test_unknown_flag_rejected(self, capsys):
        code = main(["solve", "--problem", "hager", "--solver", "bfgs", "--zeta", "3"])
        assert code == 2

    def test_non_convergence_exits_one(self, capsys):
        code = main(["solve", "--problem", "fletcher", "--solver", "bfgs",
                     "--max-iter", "1"])
        assert code == 1

    def test_lambda_out_of_range_exits_two(self, capsys):
        code = main(["solve", "--problem", "hager", "--solver", "two-phase",
                     "--lambda", "1.5"])
        assert code == 2

    def test_trace_written(self, tmp_path, capsys):
        trace = tmp_path / "trace.csv"
        code = main(["solve", "--problem", "raydan2", "--solver", "two-phase",
                     "--trace", str(trace)])
        assert code == 0
        lines = _read(trace).strip().split("\n")
        assert lines[0] == "k,f,grad_norm,alpha_bar,alpha,cos_theta,update_skipped"
        assert len(lines) >= 3

    def test_h_form_mode(self, capsys):
        code = main(["solve", "--problem", "hager", "--solver", "two-phase",
                     "--mode", "h-form"])
        assert code == 0

    def test_tol_flag(self, capsys):
        code = main(["solve", "--problem", "raydan2", "--solver", "bfgs",
                     "--tol", "1e-8"])
        out = capsys.readouterr().out
        assert code == 0
        assert "converged" in out


@pytest.fixture(scope="module")
def bench_artifacts(tmp_path_factory):
    base = tmp_path_factory.mktemp("bench")
    out = base / "results.csv"
    table = base / "table.md"
    capture = io.StringIO()
    import contextlib
    with contextlib.redirect_stdout(capture):
        code = main(["bench", "--runs", "1", "--out", str(out),
                     "--table", str(table)])
    return code, out, table, capture.getvalue()


class TestBenchAndProfile:
    def test_bench_exits_zero_and_writes_artifacts(self, bench_artifacts):
        code, out, table, stdout = bench_artifacts
        assert code == 0
        assert out.exists() and table.exists()
        assert "| Sl | Function |" in stdout
        assert "converged: bfgs 30/30, two-phase 30/30" in stdout

    def test_results_csv_has_sixty_rows(self, bench_artifacts):
        _, out, _, _ = bench_artifacts
        rows = list(csv.DictReader(io.StringIO(_read(out))))
        assert len(rows) == 60
        assert all(r["converged"] == "true" for r in rows)

    def test_bench_deterministic_except_time(self, bench_artifacts, tmp_path, capsys):
        _, out, _, _ = bench_artifacts
        out2 = tmp_path / "results2.csv"
        code = main(["bench", "--runs", "1", "--out", str(out2)])
        capsys.readouterr()
        assert code == 0
        first = list(csv.DictReader(io.StringIO(_read(out))))
        second = list(csv.DictReader(io.StringIO(_read(out2))))
        for a, b in zip(first, second):
            a.pop("median_time_ms")
            b.pop("median_time_ms")
            assert a == b

    def test_profile_from_results(self, bench_artifacts, tmp_path, capsys):
        _, out, _, _ = bench_artifacts
        profile = tmp_path / "profile.csv"
        svg = tmp_path / "profile.svg"
        code = main(["profile", "--in", str(out), "--metric", "iterations",
                     "--out", str(profile), "--svg", str(svg)])
        stdout = capsys.readouterr().out
        assert code == 0
        assert "P(1)" in stdout
        lines = _read(profile).strip().split("\n")
        assert lines[0] == "solver,tau,P"
        root = ET.parse(svg).getroot()
        assert root.tag.endswith("svg")

    def test_profile_time_metric(self, bench_artifacts, tmp_path, capsys):
        _, out, _, _ = bench_artifacts
        profile = tmp_path / "profile_time.csv"
        code = main(["profile", "--in", str(out), "--metric", "time",
                     "--out", str(profile)])
        assert code == 0
        assert profile.exists()

    def test_profile_missing_input_exits_two(self, tmp_path, capsys):
        code = main(["profile", "--in", str(tmp_path / "absent.csv"),
                     "--out", str(tmp_path / "p.csv")])
        assert code == 2

    def test_bench_bad_runs_exits_two(self, capsys):
        assert main(["bench", "--runs", "0"]) == 2


class TestCheckAndList:
    def test_check_passes(self, capsys):
        code = main(["check"])
        out = capsys.readouterr().out
        assert code == 0
        assert "30/30 gradient checks passed" in out

    def test_list_prints_manifest(self, capsys):
        code = main(["list"])
        out = capsys.readouterr().out
        assert code == 0
        lines = out.strip().split("\n")
        assert lines[0].startswith("name,dimension,f_start")
        assert len(lines) == 31


class TestParser:
    def test_help_exits_zero(self, capsys):
        assert main(["--help"]) == 0

    def test_missing_subcommand_exits_two(self, capsys):
        assert main([]) == 2

    def test_profile_requires_in_and_out(self, capsys):
        assert main(["profile", "--metric", "iterations"]) == 2
