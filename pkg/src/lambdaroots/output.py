"""Record serialization: json-lines, csv, or an aligned text table."""

from __future__ import annotations

import csv
import io
import json
import math
from fractions import Fraction
from typing import Iterable, Sequence

FORMATS = ("jsonl", "csv", "table")
SIG_DIGITS = 12


def _float(x: float):
    if math.isnan(x) or math.isinf(x):
        return str(x)
    return float(f"{x:.{SIG_DIGITS}g}")


def to_jsonable(value):
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, float):
        return _float(value)
    if isinstance(value, complex):
        return [_float(value.real), _float(value.imag)]
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if hasattr(value, "item"):  # numpy scalar
        return to_jsonable(value.item())
    return str(value)


def _text(value) -> str:
    v = to_jsonable(value)
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return ""
    if isinstance(v, (list, dict)):
        return json.dumps(v, sort_keys=True, separators=(",", ":"))
    if isinstance(v, float):
        return f"{v:.{SIG_DIGITS}g}"
    return str(v)


def format_record(record: dict, fmt: str, fields: Sequence[str] | None = None) -> str:
    if fmt == "jsonl":
        return json.dumps(to_jsonable(record), sort_keys=True) + "\n"
    fields = fields or sorted(record)
    if fmt == "csv":
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerow([_text(record.get(k)) for k in fields])
        return buf.getvalue()
    raise ValueError(f"unknown format {fmt!r}")


def header_line(fields: Sequence[str]) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerow(list(fields))
    return buf.getvalue()


def emit(records: Iterable[dict], fmt: str, stream=None,
         fields: Sequence[str] | None = None) -> str | None:
    """Write records to ``stream`` as they arrive, or return the text when
    ``stream`` is None.

    csv writes a header row first (from ``fields``, else the first record's
    sorted keys); the table format buffers everything to align columns.
    """
    if fmt not in FORMATS:
        raise ValueError(f"unknown format {fmt!r}")
    out = io.StringIO() if stream is None else stream
    if fmt == "table":
        rows = list(records)
        cols = list(fields or (sorted(rows[0]) if rows else []))
        cells = [[_text(r.get(k)) for k in cols] for r in rows]
        widths = [max([len(c)] + [len(row[i]) for row in cells]) for i, c in enumerate(cols)]
        if cols:
            out.write("  ".join(c.ljust(w) for c, w in zip(cols, widths)).rstrip() + "\n")
        for row in cells:
            out.write("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() + "\n")
    else:
        it = iter(records)
        first = next(it, None)
        if fmt == "csv":
            cols = list(fields or (sorted(first) if first is not None else []))
            out.write(header_line(cols))
        else:
            cols = None
        if first is not None:
            out.write(format_record(first, fmt, cols))
            for rec in it:
                out.write(format_record(rec, fmt, cols))
                if hasattr(out, "flush") and stream is not None:
                    out.flush()
    if stream is None:
        return out.getvalue()
    return None
