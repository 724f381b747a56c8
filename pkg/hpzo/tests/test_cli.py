# test_cli.py
# Tests the hpzo command-line subcommands and their exit codes
import json
import math

import pandas as pd
import pytest

from hpzo.cli import main


def _stdout_json(capsys):
    return json.loads(capsys.readouterr().out)


@pytest.fixture
def quad1d_experiment(experiment_file):
    def _write(epsilon):
        return experiment_file({
            "problem": {"name": "quad1d"},
            "regime": "sc",
            "epsilon": epsilon,
            "delta": 0.1,
            "trials": 3,
            "master_seed": 1,
            "overrides": {"T": 2, "alpha": 1e-3},
            "parallelism": 1,
            "output": {"write": False},
        })

    return _write


class TestSchedule:
    def test_strongly_convex(self, capsys):
        code = main(["schedule", "--regime", "sc", "--d", "10", "--L", "1", "--mu", "0.1",
                     "--delta0", "1", "--eps", "1e-3", "--delta", "0.1"])
        assert code == 0
        payload = _stdout_json(capsys)
        assert payload["T"] == 12203
        assert payload["regime"] == "strongly_convex"

    def test_trivial_convex(self, capsys):
        code = main(["schedule", "--regime", "cvx", "--d", "3", "--L", "1", "--R", "0", "--eps", "0.1", "--delta", "0.1"])
        assert code == 0
        assert _stdout_json(capsys)["status"] == "trivial"

    def test_missing_constants(self, capsys):
        code = main(["schedule", "--regime", "sc", "--d", "3", "--L", "1", "--delta", "0.1"])
        assert code == 1
        assert capsys.readouterr().out == ""

    def test_invalid_confidence(self):
        assert main(["schedule", "--regime", "nc", "--d", "3", "--L", "1", "--delta0", "1", "--eps", "0.1", "--delta", "1.5"]) == 1


class TestBounds:
    def test_nonconvex_example(self, capsys):
        code = main(["bounds", "--regime", "nc", "--d", "2", "--L", "1", "--delta0", "1", "--eps", "1",
                     "--delta", repr(2.0 / math.e)])
        assert code == 0
        payload = _stdout_json(capsys)
        assert payload["T"] == 160
        assert payload["bound_rounded"] == 1.0

    def test_explicit_horizon(self, capsys):
        code = main(["bounds", "--regime", "cvx", "--d", "2", "--L", "1", "--R", "1", "--delta", "0.1",
                     "--T", "35", "--alpha", "0.01"])
        assert code == 1


class TestRun:
    def test_writes_trajectory(self, capsys, tmp_path):
        out = tmp_path / "trajectory.csv"
        code = main(["run", "--problem", "quad1d", "--T", "2", "--out", str(out)])
        assert code == 0
        payload = _stdout_json(capsys)
        assert payload["queries"] == 4
        assert payload["trajectory_csv"] == str(out)
        assert len(pd.read_csv(out)) == 2

    def test_problem_parameters(self, capsys, output_dir):
        code = main(["run", "--problem", "quadratic", "--param", "d=4", "--param", "curvature=2.0", "--T", "5"])
        assert code == 0
        payload = _stdout_json(capsys)
        assert payload["d"] == 4
        assert payload["L_used"] == 2.0
        assert payload["trajectory_csv"].startswith(str(output_dir))

    def test_unknown_problem(self):
        assert main(["run", "--problem", "rosenbrock", "--T", "5"]) == 1

    def test_malformed_parameter(self):
        assert main(["run", "--problem", "quadratic", "--param", "d", "--T", "5"]) == 1


class TestMonteCarlo:
    def test_assertion_passes(self, capsys, quad1d_experiment):
        code = main(["montecarlo", "--config", quad1d_experiment(1.0), "--assert"])
        assert code == 0
        payload = _stdout_json(capsys)
        assert payload["dominated"] is True
        assert payload["total_queries"] == 12

    def test_assertion_fails(self, quad1d_experiment):
        assert main(["montecarlo", "--config", quad1d_experiment(1e-6), "--assert"]) == 2

    def test_without_assert_flag(self, quad1d_experiment):
        assert main(["montecarlo", "--config", quad1d_experiment(1e-6)]) == 0

    def test_writes_reports(self, tmp_path, experiment_file):
        path = experiment_file({
            "problem": {"name": "quad1d"},
            "regime": "sc",
            "epsilon": 1.0,
            "delta": 0.1,
            "trials": 2,
            "overrides": {"T": 3, "alpha": 1e-3},
            "output": {"formats": ["json", "csv"]},
        })
        assert main(["montecarlo", "--config", path, "--out-dir", str(tmp_path / "reports")]) == 0
        written = sorted(p.name for p in (tmp_path / "reports").iterdir())
        assert written == ["summary_quad1d_strongly_convex.csv", "summary_quad1d_strongly_convex.json"]

    def test_invalid_config(self, experiment_file):
        path = experiment_file({"problem": {"name": "quad1d"}, "regime": "sc", "trials": 1})
        assert main(["montecarlo", "--config", path]) == 1


class TestLemmaCheck:
    def test_rho_battery(self, capsys, tmp_path):
        out = tmp_path / "lemma.json"
        code = main(["lemma-check", "--battery", "rho", "--seed", "7", "--out", str(out)])
        assert code == 0
        assert _stdout_json(capsys) == {"rho": True}
        with open(out, encoding="utf-8") as f:
            assert json.load(f)["passed"] is True

    def test_unknown_battery(self):
        assert main(["lemma-check", "--battery", "nonsense"]) == 1


class TestCompare:
    ARGS = ["compare", "--d", "10", "--L", "1", "--mu", "0.1", "--R", "1", "--delta0", "1", "--eps", "0.01", "--delta", "0.1"]

    def test_json(self, capsys):
        assert main(self.ARGS + ["--format", "json"]) == 0
        assert len(_stdout_json(capsys)["rows"]) == 9

    def test_csv_file(self, capsys, tmp_path):
        out = tmp_path / "comparison.csv"
        assert main(self.ARGS + ["--format", "csv", "--out", str(out)]) == 0
        assert len(pd.read_csv(out)) == 9


class TestUsage:
    def test_unknown_flag(self):
        assert main(["schedule", "--bogus"]) == 1

    def test_missing_command(self):
        assert main([]) == 1
