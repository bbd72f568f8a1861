import csv
import re
from pathlib import Path

import pytest

from certbound.assessment import aggregate_fault_freeness
from certbound.cli import BOOTSTRAP_CSV_HEADER, SWEEP_CSV_HEADER, format_probability, main
from certbound.fleet import check_feasibility, run_bootstrap
from certbound.inference import sweep, worst_case_survival
from certbound.reliability import MixtureModel, survival_probability
from certbound.scenario import parse_scenario

SCENARIOS = Path(__file__).resolve().parent.parent / "scenarios"


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def first_value(line: str) -> float:
    return float(line.split(":")[-1].strip().split()[0])


def grep(out: str, needle: str) -> str:
    matches = [line for line in out.splitlines() if needle in line]
    assert matches, f"no line containing {needle!r} in:\n{out}"
    return matches[0]


class TestFormatProbability:
    def test_plain_value(self):
        assert format_probability(0.9) == "0.9"

    def test_twelve_significant_digits(self):
        assert format_probability(0.9268931337099571) == "0.92689313371"

    def test_near_one_shows_distance(self):
        text = format_probability(1.0 - 3.2e-9)
        assert text.startswith("0.999999996")
        assert "(1 - 3.2e-09)" in text

    def test_near_zero_shows_distance(self):
        assert "(0 + 5e-09)" in format_probability(5e-9)

    def test_exact_boundaries_stay_plain(self):
        assert format_probability(1.0) == "1"
        assert format_probability(0.0) == "0"


class TestPredict:
    def test_floor_case_inline(self, capsys):
        code, out = run(capsys, "predict", "--p-nf", "0.9", "--r", "0", "--n", "1000000")
        assert code == 0
        assert first_value(grep(out, "lower bound")) == pytest.approx(0.9, abs=1e-12)

    def test_matches_library(self, capsys):
        code, out = run(capsys, "predict", "--p-nf", "0.9", "--r", "1000", "--n", "10000")
        assert code == 0
        expected = worst_case_survival(0.9, 1000, 10000)
        assert first_value(grep(out, "lower bound")) == pytest.approx(
            float(expected.lower_bound), abs=1e-12
        )
        assert first_value(grep(out, "worst-case q")) == pytest.approx(
            float(expected.worst_case_q), rel=1e-9
        )

    def test_scenario_with_prior(self, capsys):
        code, out = run(capsys, "predict", "--scenario", str(SCENARIOS / "point_prediction.yaml"))
        assert code == 0
        assert "supplied-prior predictive" in out

    def test_missing_inputs_fail_validation(self, capsys):
        code, _ = run(capsys, "predict", "--p-nf", "0.9", "--r", "0")
        assert code == 4

    def test_out_of_range_inline_value(self, capsys):
        code, _ = run(capsys, "predict", "--p-nf", "1.5", "--r", "0", "--n", "10")
        assert code == 4


class TestSurvival:
    def test_certainty_case(self, capsys):
        code, out = run(capsys, "survival", "--p-nf", "1.0", "--p-fail", "0.5", "--n", "1000000000")
        assert code == 0
        assert first_value(grep(out, "n = 1000000000")) == 1.0

    def test_matches_library(self, capsys):
        code, out = run(capsys, "survival", "--p-nf", "0.9", "--p-fail", "0.01", "--n", "100")
        assert code == 0
        expected = survival_probability(MixtureModel(0.9, 0.01), 100)
        assert first_value(grep(out, "n = 100")) == pytest.approx(float(expected), abs=1e-12)

    def test_scenario_grid(self, capsys):
        code, out = run(capsys, "survival", "--scenario", str(SCENARIOS / "survival_check.yaml"))
        assert code == 0
        model = MixtureModel(0.9, 0.01)
        for n in (0, 100, 10000, 1000000):
            expected = survival_probability(model, n)
            assert first_value(grep(out, f"n = {n}:")) == pytest.approx(float(expected), abs=1e-12)

    def test_monte_carlo_is_seed_deterministic(self, capsys):
        args = ("survival", "--p-nf", "0.5", "--p-fail", "0.05", "--n", "50",
                "--mc-trials", "2000", "--seed", "9")
        _, out1 = run(capsys, *args)
        _, out2 = run(capsys, *args)
        assert out1 == out2
        assert "monte carlo" in out1


class TestBootstrap:
    def test_shipped_scenario_passes(self, capsys, tmp_path):
        csv_path = tmp_path / "trace.csv"
        code, out = run(
            capsys, "bootstrap",
            "--scenario", str(SCENARIOS / "fleet_bootstrap.yaml"),
            "--csv", str(csv_path),
        )
        assert code == 0
        assert "all windows meet the threshold" in out

        fleet = parse_scenario(SCENARIOS / "fleet_bootstrap.yaml").bootstrap
        trace = run_bootstrap(fleet)
        with csv_path.open(newline="") as fh:
            rows = list(csv.reader(fh))
        assert rows[0] == BOOTSTRAP_CSV_HEADER
        assert len(rows) == 1 + len(trace.windows)
        for row, window in zip(rows[1:], trace.windows):
            assert int(row[0]) == window.window_index
            assert int(row[1]) == window.fleet_size
            assert int(row[2]) == window.window_demands
            assert int(row[3]) == window.accumulated_evidence
            assert float(row[4]) == float(window.prediction.lower_bound)
            assert float(row[5]) == float(window.prediction.worst_case_q)
            assert row[6] == ("true" if window.meets_threshold else "false")

    def test_threshold_miss_exits_one(self, capsys, tmp_path):
        text = (
            "bootstrap:\n"
            "  growth: {kind: constant, initial_fleet: 10}\n"
            "  demands_per_aircraft_per_window: 1000\n"
            "  window_count: 3\n"
            "  p_nf: 0.9\n"
            "  initial_evidence: 10\n"
            "  confidence_threshold: 0.99\n"
        )
        path = tmp_path / "failing.yaml"
        path.write_text(text, encoding="utf-8")
        code, out = run(capsys, "bootstrap", "--scenario", str(path))
        assert code == 1
        assert "misses the threshold" in out


class TestAssess:
    def test_matches_library(self, capsys):
        code, out = run(capsys, "assess", "--scenario", str(SCENARIOS / "assessment_do178c.yaml"))
        assert code == 0
        spec = parse_scenario(SCENARIOS / "assessment_do178c.yaml").assessment
        expected = aggregate_fault_freeness(spec.groups, spec.mode)
        assert first_value(grep(out, "whole-standard p_nf")) == pytest.approx(
            float(expected), abs=1e-12
        )


class TestSweep:
    def test_csv_matches_library(self, capsys, tmp_path):
        csv_path = tmp_path / "sweep.csv"
        code, _ = run(
            capsys, "sweep",
            "--scenario", str(SCENARIOS / "sweep_grid.yaml"),
            "--csv", str(csv_path),
        )
        assert code == 0
        grids = parse_scenario(SCENARIOS / "sweep_grid.yaml").sweep
        expected = sweep(list(grids.p_nf), list(grids.r), list(grids.n))
        with csv_path.open(newline="") as fh:
            rows = list(csv.reader(fh))
        assert rows[0] == SWEEP_CSV_HEADER
        assert len(rows) == 1 + len(expected)
        for row, cell in zip(rows[1:], expected):
            assert float(row[0]) == cell.p_nf
            assert int(row[1]) == cell.r
            assert int(row[2]) == cell.n
            assert float(row[3]) == cell.lower_bound
            assert float(row[4]) == cell.worst_case_q
            assert float(row[5]) == cell.excess_over_floor

    def test_inline_grids(self, capsys):
        code, out = run(capsys, "sweep", "--p-nf", "0.9", "--r", "0,1000", "--n", "10000")
        assert code == 0
        assert len([l for l in out.splitlines() if l.strip().startswith("0.9")]) == 2


class TestExitCodes:
    def test_missing_scenario_file(self, capsys, tmp_path):
        code, _ = run(capsys, "predict", "--scenario", str(tmp_path / "missing.yaml"))
        assert code == 2

    def test_syntax_error(self, capsys, tmp_path):
        path = tmp_path / "broken.yaml"
        path.write_text("model: [unclosed\n", encoding="utf-8")
        code, _ = run(capsys, "predict", "--scenario", str(path))
        assert code == 3

    def test_validation_error(self, capsys, tmp_path):
        path = tmp_path / "invalid.yaml"
        path.write_text("model:\n  p_nf: 1.5\n", encoding="utf-8")
        code, _ = run(capsys, "predict", "--scenario", str(path))
        assert code == 4
