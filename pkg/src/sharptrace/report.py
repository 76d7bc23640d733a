"""Deterministic JSON/CSV serialisation of run reports.

JSON output sorts keys and prints every float with 17 significant digits,
so identical configurations give byte-identical files.
"""
import csv
import io
import json
import math

import numpy as np


def _float(x):
    if math.isnan(x):
        return "NaN"
    if math.isinf(x):
        return "Infinity" if x > 0 else "-Infinity"
    s = "%.17g" % x
    if not any(ch in s for ch in ".eEn"):
        s += ".0"
    return s


def _encode(obj, indent, level):
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if obj is None:
        return "null"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _float(float(obj))
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=True)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [
            f"{pad}{json.dumps(str(k))}: {_encode(obj[k], indent, level + 1)}"
            for k in sorted(obj, key=str)
        ]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        if len(obj) == 0:
            return "[]"
        items = [pad + _encode(v, indent, level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps(obj, indent=2):
    return _encode(obj, indent, 0) + "\n"


def summarize(records):
    gaps = [r["gap"] for r in records]
    return {
        "max_abs_gap": max((abs(g) for g in gaps), default=0.0),
        "min_gap": min(gaps, default=0.0),
        "pass": all(r["pass"] for r in records),
    }


def build_report(command, config, records, extra_summary=None):
    summary = summarize(records)
    if extra_summary:
        summary.update(extra_summary)
    return {"command": command, "config": config, "records": records, "summary": summary}


def to_csv(rows, columns, comments=()):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_float(float(row[c])) if isinstance(row[c], (float, np.floating)) else row[c]
                         for c in columns])
    for line in comments:
        buf.write(f"# {line}\n")
    return buf.getvalue()
