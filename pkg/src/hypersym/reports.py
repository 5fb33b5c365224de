"""Serialization of experiment reports.

JSON output is canonical: keys sorted, fixed separators, a trailing newline,
and floats written by ``repr`` so reruns with the same seed are byte-identical.
"""
from __future__ import annotations

import csv
import io
import json
from fractions import Fraction

import mpmath

from .counting import is_mpf

CSV_FIELDS = ("experiment", "n", "t", "k", "group", "seed", "trials", "estimate", "stderr")


def _default(obj):
    if isinstance(obj, Fraction):
        return f"{obj.numerator}/{obj.denominator}"
    if is_mpf(obj):
        return mpmath.nstr(obj, 30)
    if isinstance(obj, (set, frozenset)):
        return sorted(obj)
    if hasattr(obj, "to_dict"):
        return obj.to_dict()
    if hasattr(obj, "item"):  # numpy scalars
        return obj.item()
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def to_json(report) -> str:
    data = report.to_dict() if hasattr(report, "to_dict") else report
    return json.dumps(data, sort_keys=True, indent=2, default=_default) + "\n"


def csv_row(report: dict) -> dict:
    inputs = report.get("inputs", {})
    row = {"experiment": report.get("experiment")}
    for key in ("n", "t", "k", "group"):
        row[key] = inputs.get(key)
    for key in ("seed", "trials", "estimate", "stderr"):
        row[key] = report.get(key)
    return row


def to_csv(reports) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
    writer.writeheader()
    for r in reports:
        writer.writerow(csv_row(r.to_dict() if hasattr(r, "to_dict") else r))
    return buf.getvalue()
