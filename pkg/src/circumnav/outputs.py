"""CSV traces and JSON batch reports. Floats are written with 9 significant digits."""
from __future__ import annotations

import csv
import enum
import json
import math
from pathlib import Path
from typing import Any, Iterable

import numpy as np

from .monitors import RunReport
from .trace import COLUMNS, SimTrace

__all__ = ["write_trace_csv", "read_trace_csv", "report_to_dict", "batch_document",
           "write_report_json"]

SIG_DIGITS = 9


def _fmt(v: float) -> str:
    return "" if math.isnan(v) else f"{v:.{SIG_DIGITS}g}"


def write_trace_csv(trace: SimTrace, path: str | Path) -> None:
    data = trace.column_matrix()
    with open(path, "w", newline="") as fh:
        fh.write(",".join(COLUMNS) + "\n")
        for row in data.tolist():
            fh.write(",".join(_fmt(v) for v in row) + "\n")


def read_trace_csv(path: str | Path) -> SimTrace:
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if tuple(header) != COLUMNS:
            raise ValueError(f"{path}: unexpected header {header!r}")
        rows = [[float(v) if v else math.nan for v in row] for row in reader]
    data = np.array(rows, dtype=float).reshape(-1, len(COLUMNS))
    cols = {name: data[:, i] for i, name in enumerate(COLUMNS)}
    return SimTrace.from_columns(cols.pop("t"), **cols)


def _round(obj: Any) -> Any:
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, enum.Enum):
        return obj.value
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        if not math.isfinite(v):
            return None
        return float(f"{v:.{SIG_DIGITS}g}")
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, dict):
        return {str(k): _round(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round(v) for v in obj]
    return obj


def report_to_dict(report: RunReport) -> dict[str, Any]:
    d = {
        "run_index": report.run_index,
        "status": report.status,
        "error": report.error,
        "passed": report.passed,
        "initial_state": report.initial_state,
        "final_radius": report.final_radius,
        "steady_radius_mean": report.steady_radius_mean,
        "steady_radius_max": report.steady_radius_max,
        "steady_radius_min": report.steady_radius_min,
        "steady_bearing_max_dev": report.steady_bearing_max_dev,
        "expected_radius": report.expected_radius,
        "convergence_time": report.convergence_time,
        "bearing_capture_time": report.bearing_capture_time,
        "cd_entry_episodes": report.cd_entry_episodes,
        "rotation": report.rotation,
        "lyapunov_violations": report.lyapunov_violations,
        "max_abs_omega": report.max_abs_omega,
        "gain_verdict": report.gain_verdict,
        "theorem_verdicts": dict(sorted(report.theorem_verdicts.items())),
    }
    return _round(d)


def batch_document(reports: Iterable[RunReport], config: dict[str, Any] | None = None) -> dict[str, Any]:
    reports = sorted(reports, key=lambda r: r.run_index)
    runs = [report_to_dict(r) for r in reports]
    return {
        "config": _round(config or {}),
        "n_runs": len(runs),
        "n_failed": sum(r["status"] != "ok" for r in runs),
        "all_passed": all(r["passed"] for r in runs),
        "runs": runs,
    }


def write_report_json(reports: Iterable[RunReport], path: str | Path,
                      config: dict[str, Any] | None = None) -> dict[str, Any]:
    doc = batch_document(reports, config)
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=2)
        fh.write("\n")
    return doc
