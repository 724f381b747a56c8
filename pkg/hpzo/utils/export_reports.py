"""
hpzo Report Export
Writes trajectories, Monte Carlo summaries and comparison tables as JSON or CSV.
Output is deterministic: JSON uses sorted keys and CSV rows follow index order,
so re-emitting the same object produces identical bytes.
"""

import json
import logging
import os
from typing import TYPE_CHECKING, Any, Dict, Iterable, List

import pandas as pd

from ..config import EnvironmentOverrides, settings
from ..core.optimizer import TrajectoryRecord
from ..errors import HarnessError, InvalidInputError

if TYPE_CHECKING:
    from ..harness.summary import McSummary

logger = logging.getLogger(__name__)

TRAJECTORY_COLUMNS = ["t", "f", "grad_norm_sq", "zeta", "u_norm_sq", "beta", "delta_alpha", "eta"]
EVENT_COLUMNS = ["rho1", "rho2", "alpha", "alpha_cvx", "u_sum", "weighted"]
TRIAL_COLUMNS = ["trial_index", "final_quantity", "failed_run"] + [f"event_{name}" for name in EVENT_COLUMNS]


def default_output_path(filename: str) -> str:
    """Places a file under the configured output directory (HPZO_OUTPUT_DIR wins)."""
    directory = EnvironmentOverrides().output_dir or settings.output_directory
    return os.path.join(directory, filename)


def _ensure_parent(path: str):
    parent = os.path.dirname(os.path.abspath(path))
    os.makedirs(parent, exist_ok=True)


def _write_text(path: str, text: str):
    try:
        _ensure_parent(path)
        with open(path, "w", encoding="utf-8", newline="") as f:
            f.write(text)
    except OSError as e:
        raise HarnessError(f"Failed to write {path}: {e}") from e
    logger.info(f"Wrote {path}")


def to_json_text(payload: Dict[str, Any]) -> str:
    return json.dumps(payload, indent=2, sort_keys=True, allow_nan=False) + "\n"


def trajectory_frame(record: TrajectoryRecord) -> pd.DataFrame:
    return pd.DataFrame(
        {
            "t": range(record.completed_steps),
            "f": record.f_before,
            "grad_norm_sq": record.grad_norm_sq,
            "zeta": record.zeta,
            "u_norm_sq": record.u_norm_sq,
            "beta": record.beta,
            "delta_alpha": record.delta_alpha,
            "eta": record.eta,
        },
        columns=TRAJECTORY_COLUMNS,
    )


def export_trajectory_csv(record: TrajectoryRecord, path: str) -> str:
    """One row per completed step, header always present."""
    _write_text(path, trajectory_frame(record).to_csv(index=False, lineterminator="\n"))
    return path


def trials_frame(summary: "McSummary") -> pd.DataFrame:
    rows = []
    for trial in sorted(summary.trial_results, key=lambda item: item.trial_index):
        row = {
            "trial_index": trial.trial_index,
            "final_quantity": trial.final_quantity,
            "failed_run": trial.failed_run,
        }
        for name in EVENT_COLUMNS:
            row[f"event_{name}"] = trial.events.get(name)
        rows.append(row)
    return pd.DataFrame(rows, columns=TRIAL_COLUMNS)


def emit_report(summary: "McSummary", path: str, fmt: str = "json") -> str:
    """Writes the full summary (json) or one row per trial (csv)."""
    if fmt == "json":
        text = to_json_text(summary.model_dump(mode="json"))
    elif fmt == "csv":
        text = trials_frame(summary).to_csv(index=False, lineterminator="\n")
    else:
        raise InvalidInputError(f"Unknown report format '{fmt}'; expected json or csv")
    _write_text(path, text)
    return path


def load_summary(path: str) -> "McSummary":
    from ..harness.summary import McSummary

    try:
        with open(path, "r", encoding="utf-8") as f:
            return McSummary.model_validate_json(f.read())
    except OSError as e:
        raise HarnessError(f"Failed to read {path}: {e}") from e


def comparison_frame(rows: Iterable) -> pd.DataFrame:
    records: List[Dict[str, Any]] = [row.model_dump(mode="json") for row in rows]
    return pd.DataFrame(records)


def emit_comparison(rows: Iterable, path: str, fmt: str = "csv") -> str:
    rows = list(rows)
    if fmt == "json":
        text = to_json_text({"rows": [row.model_dump(mode="json") for row in rows]})
    elif fmt == "csv":
        text = comparison_frame(rows).to_csv(index=False, lineterminator="\n")
    else:
        raise InvalidInputError(f"Unknown comparison format '{fmt}'; expected json or csv")
    _write_text(path, text)
    return path


def emit_json(payload: Dict[str, Any], path: str) -> str:
    _write_text(path, to_json_text(payload))
    return path
