"""Report serialisation: JSON (one object per line) and CSV, floats at 17 significant digits."""
from __future__ import annotations

import csv
import dataclasses
import io
import json
import math
import numbers
from typing import Any, Sequence

from .families import SharpnessRow


def format_float(x: float) -> str:
    if math.isnan(x):
        return "NaN"
    if math.isinf(x):
        return "Infinity" if x > 0 else "-Infinity"
    return format(x, ".17g")


def _json_value(v: Any) -> str:
    if isinstance(v, bool) or v is None:
        return json.dumps(v)
    if isinstance(v, numbers.Integral):
        return str(int(v))
    if isinstance(v, numbers.Real):
        return format_float(float(v))
    if isinstance(v, str):
        return json.dumps(v)
    if isinstance(v, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {_json_value(x)}" for k, x in v.items()) + "}"
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_json_value(x) for x in v) + "]"
    raise TypeError(f"cannot serialise {type(v).__name__}")


def _as_record(obj: Any) -> dict:
    if dataclasses.is_dataclass(obj):
        return {f.name: getattr(obj, f.name) for f in dataclasses.fields(obj)}
    if isinstance(obj, dict):
        return obj
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def _csv_cell(v: Any) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, numbers.Integral):
        return str(int(v))
    if isinstance(v, numbers.Real):
        return format_float(float(v))
    return str(v)


def emit_report(report: Any, format: str = "json", columns: Sequence[str] | None = None) -> bytes:
    """Serialise one record or a list of records.

    JSON writes one object per line. CSV writes a header plus one row per
    record; sweep rows use the fixed sweep header, and an empty list yields
    the header alone.
    """
    records = list(report) if isinstance(report, (list, tuple)) else [report]
    if format == "json":
        return "".join(_json_value(_as_record(r)) + "\n" for r in records).encode()
    if format != "csv":
        raise ValueError(f"unknown format {format!r}")
    if columns is None:
        if not records or isinstance(records[0], SharpnessRow):
            columns = SharpnessRow.CSV_COLUMNS
        else:
            columns = list(_as_record(records[0]))
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in records:
        rec = _as_record(r)
        w.writerow([_csv_cell(rec.get(c)) for c in columns])
    return buf.getvalue().encode()


def parse_json_records(data: bytes | str) -> list[dict]:
    text = data.decode() if isinstance(data, bytes) else data
    return [json.loads(line) for line in text.splitlines() if line.strip()]


def parse_csv_records(data: bytes | str) -> list[dict]:
    text = data.decode() if isinstance(data, bytes) else data
    rows = list(csv.DictReader(io.StringIO(text)))
    out = []
    for row in rows:
        rec = {}
        for k, v in row.items():
            if v == "":
                rec[k] = None
            elif v in ("true", "false"):
                rec[k] = v == "true"
            else:
                for conv in (int, float, str):
                    try:
                        rec[k] = conv(v)
                        break
                    except ValueError:
                        continue
        out.append(rec)
    return out
