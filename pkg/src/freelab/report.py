"""Deterministic serialization of reports as JSON, CSV or plain text."""

from __future__ import annotations

import csv
import io
import json

from .experiments import FORMATS

TABLE_KEYS = ("rows", "instances", "basis")


def _table(report: dict):
    for key in TABLE_KEYS:
        rows = report.get(key)
        if isinstance(rows, list) and rows and isinstance(rows[0], dict):
            return rows
    return None


def _flatten(obj, prefix=""):
    if isinstance(obj, dict):
        for k, v in obj.items():
            yield from _flatten(v, f"{prefix}{k}.")
    elif isinstance(obj, list) and obj and isinstance(obj[0], (dict, list)):
        for i, v in enumerate(obj):
            yield from _flatten(v, f"{prefix}{i}.")
    else:
        value = obj if not isinstance(obj, list) else " ".join(map(str, obj))
        yield prefix.rstrip("."), value


def to_csv(report: dict) -> str:
    buf = io.StringIO()
    rows = _table(report)
    if rows is not None:
        writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
    else:
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["key", "value"])
        writer.writerows(_flatten(report))
    return buf.getvalue()


def _text_witness(w) -> str:
    if not w:
        return "none"
    if isinstance(w[0], dict):
        return " + ".join(f"[{t['coef']}] {t['monomial']}" for t in w)
    return " + ".join(f"[{c}] {m}" for c, m in w)


def to_text(report: dict) -> str:
    lines = []
    if "verdict" in report:
        lines.append(f"verdict: {report['verdict']}")
    for key, value in report.items():
        if key == "verdict":
            continue
        if key == "witness" or (isinstance(value, dict) and "witness" in value):
            if key == "witness":
                lines.append(f"witness: {_text_witness(value)}")
                continue
            sub = ", ".join(
                f"{k}={v}" for k, v in value.items() if k != "witness" and not isinstance(v, (dict, list))
            )
            lines.append(f"{key}: {sub}")
            if value.get("witness"):
                lines.append(f"{key}.witness: {_text_witness(value['witness'])}")
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            lines.append(f"{key}:")
            for row in value:
                lines.append("  " + "  ".join(f"{k}={v}" for k, v in row.items()))
        elif isinstance(value, dict):
            lines.append(f"{key}: " + ", ".join(f"{k}={v}" for k, v in value.items()))
        elif isinstance(value, list):
            lines.append(f"{key}: " + ", ".join(map(str, value)))
        else:
            lines.append(f"{key}: {value}")
    return "\n".join(lines) + "\n"


def emit_report(report: dict, fmt: str = "json") -> str:
    """Serialize ``report`` (a JSON-compatible dict) in ``fmt``."""
    if fmt not in FORMATS:
        raise ValueError(f"format must be one of {', '.join(FORMATS)}")
    if hasattr(report, "to_dict"):
        report = report.to_dict()
    if fmt == "json":
        return json.dumps(report, indent=2, default=str) + "\n"
    if fmt == "csv":
        return to_csv(report)
    return to_text(report)
