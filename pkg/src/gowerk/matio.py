"""Matrix files.

CSV: headerless, comma-separated, one row per line. Values are written
with ``repr`` so that reading a file back yields bit-identical doubles.

JSON: ``{"rows": m, "cols": n, "data": [row-major values]}``.

The format follows the file extension (``.json`` or anything else for
CSV) unless given explicitly.
"""
from __future__ import annotations

import csv
import io
import json
import os
import tempfile
from pathlib import Path

import numpy as np

from .errors import MatrixFormatError

FORMATS = ("csv", "json")


def infer_format(path, fmt: str | None = None) -> str:
    if fmt:
        if fmt not in FORMATS:
            raise MatrixFormatError(f"unknown format {fmt!r}")
        return fmt
    return "json" if str(path).lower().endswith(".json") else "csv"


def _parse_csv(text: str) -> np.ndarray:
    rows = []
    for lineno, row in enumerate(csv.reader(io.StringIO(text)), start=1):
        try:
            rows.append([float(x) for x in row])
        except ValueError as exc:
            raise MatrixFormatError(f"line {lineno}: {exc}") from None
    # csv.reader drops nothing but a trailing newline; empty rows are m x 0
    widths = {len(r) for r in rows}
    if len(widths) > 1:
        raise MatrixFormatError(f"ragged CSV: row lengths {sorted(widths)}")
    if not rows:
        raise MatrixFormatError("empty CSV file")
    return np.array(rows, dtype=float).reshape(len(rows), widths.pop())


def _parse_json(text: str) -> np.ndarray:
    try:
        obj = json.loads(text)
        rows, cols, data = int(obj["rows"]), int(obj["cols"]), obj["data"]
    except (ValueError, KeyError, TypeError) as exc:
        raise MatrixFormatError(f"bad JSON matrix: {exc}") from None
    if rows < 0 or cols < 0 or len(data) != rows * cols:
        raise MatrixFormatError(f"data has {len(data)} values, expected {rows}x{cols}")
    return np.array(data, dtype=float).reshape(rows, cols)


def read_matrix(path, fmt: str | None = None) -> np.ndarray:
    text = Path(path).read_text()
    if infer_format(path, fmt) == "json":
        return _parse_json(text)
    return _parse_csv(text)


def read_vector(path, fmt: str | None = None) -> np.ndarray:
    """A vector stored as a single row or a single column."""
    a = read_matrix(path, fmt)
    if min(a.shape) > 1:
        raise MatrixFormatError(f"expected a vector, got a {a.shape[0]}x{a.shape[1]} matrix")
    return a.ravel()


def format_matrix(a, fmt: str = "csv") -> str:
    a = np.atleast_2d(np.asarray(a, dtype=float))
    if fmt == "json":
        return json.dumps({"rows": a.shape[0], "cols": a.shape[1],
                           "data": [float(x) for x in a.ravel()]}) + "\n"
    return "".join(",".join(repr(float(x)) for x in row) + "\n" for row in a)


def atomic_write(path, text: str) -> None:
    """Write ``text`` to a temp file beside ``path``, then rename over it."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_matrix(path, a, fmt: str | None = None) -> None:
    atomic_write(path, format_matrix(a, infer_format(path, fmt)))
