"""Text I/O for matrices, vectors, and JSON reports.

The canonical matrix format is line-oriented plain text: optional comment
lines starting with "#", then a header line "m n", then m rows of n
whitespace-separated decimals. Files with a .csv extension are instead plain
RFC-4180 numeric grids (no header line; the shape is inferred). Vectors are
one value per line with the same comment rule.

All floats are written with 17 significant digits, which round-trips IEEE
doubles exactly: a matrix written and read back is bit-identical.
"""

from __future__ import annotations

import csv
import dataclasses
import io
import math
import os
from typing import Any

import numpy as np

__all__ = [
    "read_matrix",
    "write_matrix",
    "matrix_to_text",
    "read_vector",
    "write_vector",
    "format_float",
    "to_jsonable",
    "dumps_json",
]


def format_float(x: float) -> str:
    """Shortest 17-significant-digit decimal form; exact for float64."""
    return format(float(x), ".17g")


def _data_lines(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            yield stripped


def read_matrix(path: str) -> np.ndarray:
    """Read a matrix file; .csv means a headerless RFC-4180 numeric grid."""
    if path.lower().endswith(".csv"):
        rows = []
        with open(path, "r", encoding="utf-8", newline="") as fh:
            for rec in csv.reader(fh):
                if not rec or (rec[0].strip().startswith("#")):
                    continue
                rows.append([float(v) for v in rec])
        if not rows:
            raise ValueError(f"{path}: empty csv matrix")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ValueError(f"{path}: ragged csv rows")
        return np.asarray(rows, dtype=float)

    lines = list(_data_lines(path))
    if not lines:
        raise ValueError(f"{path}: empty matrix file")
    header = lines[0].split()
    if len(header) != 2:
        raise ValueError(f"{path}: header must be 'm n', got {lines[0]!r}")
    m, n = int(header[0]), int(header[1])
    if m < 1 or n < 1:
        raise ValueError(f"{path}: header dimensions must be positive")
    if len(lines) - 1 != m:
        raise ValueError(f"{path}: header says {m} rows, file has {len(lines) - 1}")
    out = np.empty((m, n), dtype=float)
    for i, line in enumerate(lines[1:]):
        vals = line.split()
        if len(vals) != n:
            raise ValueError(f"{path}: row {i} has {len(vals)} values, expected {n}")
        out[i] = [float(v) for v in vals]
    return out


def matrix_to_text(A, comments=(), as_csv: bool = False) -> str:
    A = np.atleast_2d(np.asarray(A, dtype=float))
    buf = io.StringIO()
    if as_csv:
        w = csv.writer(buf)
        for row in A:
            w.writerow([format_float(v) for v in row])
        return buf.getvalue()
    for c in comments:
        buf.write(f"# {c}\n")
    buf.write(f"{A.shape[0]} {A.shape[1]}\n")
    for row in A:
        buf.write(" ".join(format_float(v) for v in row) + "\n")
    return buf.getvalue()


def write_matrix(path: str, A, comments=()) -> None:
    text = matrix_to_text(A, comments, as_csv=path.lower().endswith(".csv"))
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def read_vector(path: str) -> np.ndarray:
    """Read a one-value-per-line vector file."""
    vals = []
    for line in _data_lines(path):
        # tolerate csv-style single columns with stray commas
        vals.append(float(line.rstrip(",")))
    if not vals:
        raise ValueError(f"{path}: empty vector file")
    return np.asarray(vals, dtype=float)


def write_vector(path: str, x, comments=()) -> None:
    x = np.atleast_1d(np.asarray(x, dtype=float))
    with open(path, "w", encoding="utf-8") as fh:
        for c in comments:
            fh.write(f"# {c}\n")
        for v in x:
            fh.write(format_float(v) + "\n")


def to_jsonable(obj: Any) -> Any:
    """Reduce dataclasses, numpy scalars/arrays, and containers to plain
    dict/list/str/int/float/bool/None structures."""
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: to_jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, np.ndarray):
        return [to_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        return [to_jsonable(v) for v in obj]
    if obj is None or isinstance(obj, (str, int, bool, float)):
        return obj
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _write_json(buf: io.StringIO, obj: Any, indent: int) -> None:
    pad = "  " * indent
    if isinstance(obj, dict):
        if not obj:
            buf.write("{}")
            return
        buf.write("{\n")
        for i, (k, v) in enumerate(obj.items()):
            buf.write(f'{pad}  "{k}": ')
            _write_json(buf, v, indent + 1)
            buf.write(",\n" if i + 1 < len(obj) else "\n")
        buf.write(pad + "}")
    elif isinstance(obj, list):
        if not obj:
            buf.write("[]")
            return
        flat = all(not isinstance(v, (dict, list)) for v in obj)
        if flat and len(obj) <= 8:
            buf.write("[" + ", ".join(_scalar_json(v) for v in obj) + "]")
            return
        buf.write("[\n")
        for i, v in enumerate(obj):
            buf.write(pad + "  ")
            _write_json(buf, v, indent + 1)
            buf.write(",\n" if i + 1 < len(obj) else "\n")
        buf.write(pad + "]")
    else:
        buf.write(_scalar_json(obj))


def _scalar_json(v: Any) -> str:
    if v is None:
        return "null"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        # JSON has no tokens for the nonfinite values; use strings
        if math.isnan(v):
            return '"nan"'
        if math.isinf(v):
            return '"inf"' if v > 0 else '"-inf"'
        out = format_float(v)
        # keep integral floats recognizably float on the way back
        if "." not in out and "e" not in out and "E" not in out:
            out += ".0"
        return out
    if isinstance(v, str):
        out = v.replace("\\", "\\\\").replace('"', '\\"')
        out = out.replace("\n", "\\n").replace("\r", "\\r").replace("\t", "\\t")
        return f'"{out}"'
    raise TypeError(f"cannot serialize {type(v).__name__}")


def dumps_json(obj: Any) -> str:
    """Serialize to JSON text with every float at 17 significant digits."""
    buf = io.StringIO()
    _write_json(buf, to_jsonable(obj), 0)
    buf.write("\n")
    return buf.getvalue()
