"""Deterministic serialization of experiment reports.

JSON documents have the fixed top-level keys

    "config", "records", "summary", "version", "duration_seconds"

and CSV output is one row per record with a stable column order (the
records of one experiment all share one flat schema).  Floats are rendered
with 17 significant digits so values round-trip exactly and identical runs
serialize to identical bytes; only ``duration_seconds`` varies between
reruns of the same seeded config.  Infinities are not allowed in records
(builders map sentinel values to null before they get here).
"""

from __future__ import annotations

import json
import math
import sys
from dataclasses import dataclass
from typing import Any

from .errors import InvalidInput


@dataclass
class ExperimentReport:
    """One experiment run: echoed config, per-trial records, summary."""

    config: dict[str, Any]
    records: list[dict[str, Any]]
    summary: dict[str, Any]
    version: str
    duration_seconds: float = 0.0

    def passed(self) -> bool:
        return bool(self.summary.get("pass", False))

    def body(self) -> dict[str, Any]:
        """Everything except the timing field; reruns with the same config
        and seed must reproduce this byte for byte once serialized."""
        return {
            "config": self.config,
            "records": self.records,
            "summary": self.summary,
            "version": self.version,
        }


def format_float(x: float) -> str:
    if math.isnan(x) or math.isinf(x):
        raise InvalidInput(f"non-finite number in report: {x!r}")
    return format(float(x), ".17g")


def _render(value: Any, indent: int, out: list[str]) -> None:
    pad = "  " * indent
    if value is None:
        out.append("null")
    elif isinstance(value, bool):
        out.append("true" if value else "false")
    elif isinstance(value, int):
        out.append(str(value))
    elif isinstance(value, float):
        out.append(format_float(value))
    elif isinstance(value, str):
        out.append(json.dumps(value))
    elif isinstance(value, dict):
        if not value:
            out.append("{}")
            return
        out.append("{\n")
        for k, (key, item) in enumerate(value.items()):
            if not isinstance(key, str):
                raise InvalidInput(f"report keys must be strings, got {key!r}")
            out.append(f"{pad}  {json.dumps(key)}: ")
            _render(item, indent + 1, out)
            out.append(",\n" if k < len(value) - 1 else "\n")
        out.append(pad + "}")
    elif isinstance(value, (list, tuple)):
        if not value:
            out.append("[]")
            return
        out.append("[\n")
        for k, item in enumerate(value):
            out.append(pad + "  ")
            _render(item, indent + 1, out)
            out.append(",\n" if k < len(value) - 1 else "\n")
        out.append(pad + "]")
    else:
        raise InvalidInput(f"unserializable value in report: {value!r}")


def render_json(report: ExperimentReport) -> str:
    doc = dict(report.body())
    doc["duration_seconds"] = float(report.duration_seconds)
    out: list[str] = []
    _render(doc, 0, out)
    out.append("\n")
    return "".join(out)


def _csv_cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return format_float(value)
    if isinstance(value, str):
        if any(c in value for c in ',"\n'):
            return '"' + value.replace('"', '""') + '"'
        return value
    raise InvalidInput(f"unserializable CSV cell: {value!r}")


def render_csv(report: ExperimentReport) -> str:
    """One row per record; columns in the record builder's fixed order."""
    if not report.records:
        return "\n"
    columns = list(report.records[0].keys())
    lines = [",".join(columns)]
    for record in report.records:
        if list(record.keys()) != columns:
            raise InvalidInput("records disagree on their column schema")
        lines.append(",".join(_csv_cell(record[c]) for c in columns))
    return "\n".join(lines) + "\n"


def render(report: ExperimentReport, format: str = "json") -> str:
    if format == "json":
        return render_json(report)
    if format == "csv":
        return render_csv(report)
    raise InvalidInput(f"unknown report format {format!r}")


def write_report(report: ExperimentReport, path: str | None, format: str = "json") -> None:
    """Write the rendered report to a file, or to stdout for path None/'-'."""
    text = render(report, format)
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(text)
