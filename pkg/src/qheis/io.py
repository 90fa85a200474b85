"""CSV and JSON row files.

CSV: comma-separated, one header line, UTF-8, LF endings, floats with 17
significant digits (lossless for IEEE doubles). JSON: a single object with
``meta`` and ``rows``; ``meta["columns"]`` names the row entries.
"""
from __future__ import annotations

import contextlib
import io
import json
import sys
from pathlib import Path
from typing import Any, Iterable, Sequence

import numpy as np

FLOAT_FORMAT = ".17g"


def format_float(x: float) -> str:
    return format(float(x), FLOAT_FORMAT)


@contextlib.contextmanager
def _open_out(path):
    if path is None or str(path) == "-":
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            yield fh


def dumps_csv(columns: Sequence[str], rows: Iterable[Sequence[float]]) -> str:
    buf = io.StringIO()
    buf.write(",".join(columns) + "\n")
    for row in rows:
        buf.write(",".join(format_float(x) for x in row) + "\n")
    return buf.getvalue()


def loads_csv(text: str) -> tuple[list[str], np.ndarray]:
    lines = [ln for ln in text.split("\n") if ln]
    if not lines:
        raise ValueError("empty CSV")
    columns = lines[0].split(",")
    data = np.array([[float(x) for x in ln.split(",")] for ln in lines[1:]], dtype=float)
    return columns, data.reshape(-1, len(columns))


def dumps_json(meta: dict[str, Any], columns: Sequence[str], rows: Iterable[Sequence[float]]) -> str:
    payload = {"meta": {**meta, "columns": list(columns)}, "rows": [[float(x) for x in r] for r in rows]}
    return json.dumps(payload, indent=1, default=_jsonable) + "\n"


def loads_json(text: str) -> tuple[dict[str, Any], np.ndarray]:
    payload = json.loads(text)
    rows = np.array(payload["rows"], dtype=float)
    return payload["meta"], rows.reshape(-1, len(payload["meta"]["columns"]))


def _jsonable(obj):
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, np.generic):
        return obj.item()
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def write_table(path, fmt: str, meta: dict[str, Any], columns: Sequence[str], rows) -> None:
    if fmt == "csv":
        text = dumps_csv(columns, rows)
    elif fmt == "json":
        text = dumps_json(meta, columns, rows)
    else:
        raise ValueError(f"unknown format {fmt!r}")
    with _open_out(path) as fh:
        fh.write(text)


def read_table(path) -> tuple[dict[str, Any], list[str], np.ndarray]:
    """Read a file written by :func:`write_table`; the format is sniffed."""
    text = Path(path).read_text(encoding="utf-8")
    if text.lstrip().startswith("{"):
        meta, rows = loads_json(text)
        return meta, list(meta["columns"]), rows
    columns, rows = loads_csv(text)
    return {}, columns, rows


def write_json(path, payload: dict[str, Any]) -> None:
    with _open_out(path) as fh:
        fh.write(json.dumps(payload, indent=1, default=_jsonable) + "\n")
