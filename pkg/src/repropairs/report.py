"""Structured text reports and curve files.

Reports are JSON documents with stable field names. Floats are written with
17 significant digits so that they round-trip bit-exactly; non-finite values
are written as the strings "inf", "-inf" and "nan".
"""
from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np


@dataclass
class Report:
    command: str
    config: dict
    result: dict
    curves: dict = field(default_factory=dict)
    success: bool = True

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "config": self.config,
            "success": self.success,
            "result": self.result,
            "curves": {k: [[lvl, val] for lvl, val in v] for k, v in self.curves.items()},
        }

    def render(self) -> str:
        return render(self.to_dict()) + "\n"


def format_float(x: float) -> str:
    if math.isnan(x):
        return '"nan"'
    if math.isinf(x):
        return '"inf"' if x > 0 else '"-inf"'
    return format(x, ".17g")


def render(obj, indent: int = 0) -> str:
    """JSON text with 17-significant-digit floats; keys keep insertion order."""
    pad = "  " * (indent + 1)
    end = "  " * indent
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if obj is None:
        return "null"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return format_float(float(obj))
    if isinstance(obj, (complex, np.complexfloating)):
        return render({"re": obj.real, "im": obj.imag}, indent)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, np.ndarray):
        return render(obj.tolist(), indent)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {render(v, indent + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(not isinstance(v, (dict, list, tuple, np.ndarray)) for v in obj):
            return "[" + ", ".join(render(v, indent + 1) for v in obj) + "]"
        return "[\n" + ",\n".join(pad + render(v, indent + 1) for v in obj) + "\n" + end + "]"
    raise TypeError(f"cannot render {type(obj).__name__}")


def parse_float(s):
    """Inverse of ``format_float`` for values read back from reports or curve files."""
    if isinstance(s, str):
        return float(s)
    return s


def emit_curves(report: Report, path) -> None:
    """Write every (level, value) series as ``series,level,value`` CSV rows."""
    path = Path(path)
    try:
        fh = path.open("w", newline="")
    except OSError as exc:
        raise OSError(f"cannot write curves to {path}: {exc.strerror}") from None
    with fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["series", "level", "value"])
        for name, series in report.curves.items():
            for level, value in series:
                w.writerow([name, int(level), format_float(float(value)).strip('"')])


def read_curves(path) -> dict:
    out: dict = {}
    with Path(path).open(newline="") as fh:
        rows = csv.reader(fh)
        header = next(rows)
        if header != ["series", "level", "value"]:
            raise ValueError(f"{path}: unexpected header {header}")
        for name, level, value in rows:
            out.setdefault(name, []).append((int(level), float(value)))
    return out
