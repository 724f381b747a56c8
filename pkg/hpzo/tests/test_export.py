# test_export.py
# Tests trajectory, summary and comparison exports
import json
import os

import pandas as pd
import pytest

from hpzo.core.oracles import build_problem
from hpzo.core.optimizer import RunParams, run_trajectory
from hpzo.core.sampling import SeedStream
from hpzo.core.schedules import comparison_table
from hpzo.errors import HarnessError, InvalidInputError
from hpzo.harness import ExperimentConfig, McSummary, run_monte_carlo
from hpzo.utils import (
    default_output_path,
    emit_comparison,
    emit_json,
    emit_report,
    export_trajectory_csv,
    load_summary,
)
from hpzo.utils.export_reports import TRAJECTORY_COLUMNS, TRIAL_COLUMNS


@pytest.fixture(scope="module")
def summary():
    config = ExperimentConfig.model_validate({
        "problem": {"name": "quadratic", "params": {"d": 3}},
        "regime": "sc",
        "epsilon": 1.0,
        "delta": 0.1,
        "trials": 4,
        "master_seed": 3,
        "overrides": {"T": 25, "alpha": 1e-3},
        "parallelism": 1,
    })
    return run_monte_carlo(config)


class TestTrajectoryExport:
    def test_rows_and_header(self, tmp_path):
        problem = build_problem("quadratic", {"d": 3})
        params = RunParams(T=12, alpha=1e-3, delta=0.1, epsilon=1.0, L_used=1.0, stream=SeedStream(1, 0))
        record = run_trajectory(problem, params)
        path = export_trajectory_csv(record, str(tmp_path / "nested" / "trajectory.csv"))
        frame = pd.read_csv(path)
        assert list(frame.columns) == TRAJECTORY_COLUMNS
        assert len(frame) == 12
        assert list(frame["t"]) == list(range(12))
        assert frame["zeta"].between(0.0, 1.0).all()


class TestSummaryExport:
    def test_json_is_stable(self, summary, tmp_path):
        first = emit_report(summary, str(tmp_path / "a.json"))
        second = emit_report(summary, str(tmp_path / "b.json"))
        with open(first, "rb") as a, open(second, "rb") as b:
            assert a.read() == b.read()

    def test_json_reloads(self, summary, tmp_path):
        path = emit_report(summary, str(tmp_path / "summary.json"))
        loaded = load_summary(path)
        assert isinstance(loaded, McSummary)
        assert loaded == summary
        with open(path, encoding="utf-8") as f:
            payload = json.load(f)
        assert payload["regime"] == "strongly_convex"
        assert len(payload["trial_results"]) == 4

    def test_csv_rows(self, summary, tmp_path):
        frame = pd.read_csv(emit_report(summary, str(tmp_path / "trials.csv"), fmt="csv"))
        assert list(frame.columns) == TRIAL_COLUMNS
        assert list(frame["trial_index"]) == [0, 1, 2, 3]

    def test_empty_summary_has_header_only(self, tmp_path):
        empty = McSummary(
            problem="quadratic", regime="strongly_convex", certified_quantity="final_gap", epsilon=1.0, delta=0.1,
            trials=0, master_seed=0, T=1, alpha=1e-3,
        )
        path = emit_report(empty, str(tmp_path / "empty.csv"), fmt="csv")
        with open(path, encoding="utf-8") as f:
            lines = f.read().splitlines()
        assert lines == [",".join(TRIAL_COLUMNS)]

    def test_unknown_format(self, summary, tmp_path):
        with pytest.raises(InvalidInputError):
            emit_report(summary, str(tmp_path / "summary.xml"), fmt="xml")

    def test_unwritable_path(self, summary, tmp_path):
        blocker = tmp_path / "file"
        blocker.write_text("")
        target = str(blocker / "summary.json")
        with pytest.raises(HarnessError, match="summary.json"):
            emit_report(summary, target)

    def test_missing_summary(self, tmp_path):
        with pytest.raises(HarnessError):
            load_summary(str(tmp_path / "absent.json"))


class TestComparisonExport:
    def test_csv(self, tmp_path):
        rows = comparison_table(10, 1.0, 0.1, 1.0, 1.0, 1e-2, 0.1)
        frame = pd.read_csv(emit_comparison(rows, str(tmp_path / "comparison.csv")))
        assert len(frame) == 9
        assert (frame["queries_per_iteration"] == 2).all()

    def test_json(self, tmp_path):
        rows = comparison_table(10, 1.0, 0.1, 1.0, 1.0, 1e-2, 0.1)
        with open(emit_comparison(rows, str(tmp_path / "comparison.json"), fmt="json"), encoding="utf-8") as f:
            payload = json.load(f)
        assert [row["regime"] for row in payload["rows"][::3]] == ["strongly_convex", "convex", "nonconvex"]

    def test_unknown_format(self, tmp_path):
        with pytest.raises(InvalidInputError):
            emit_comparison([], str(tmp_path / "x"), fmt="parquet")


class TestOutputPaths:
    def test_environment_directory(self, output_dir):
        assert default_output_path("x.json") == os.path.join(str(output_dir), "x.json")

    def test_emit_json_sorts_keys(self, tmp_path):
        path = emit_json({"b": 1, "a": 2}, str(tmp_path / "payload.json"))
        with open(path, encoding="utf-8") as f:
            text = f.read()
        assert text.index('"a"') < text.index('"b"')
        assert text.endswith("\n")
