"""
hpzo Utilities - report and trajectory export.
"""

from .export_reports import (
    default_output_path,
    emit_comparison,
    emit_json,
    emit_report,
    export_trajectory_csv,
    load_summary,
    trajectory_frame,
    trials_frame,
)

__all__ = [
    "default_output_path",
    "emit_comparison",
    "emit_json",
    "emit_report",
    "export_trajectory_csv",
    "load_summary",
    "trajectory_frame",
    "trials_frame",
]
