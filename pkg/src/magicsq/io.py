"""CSV and JSON serialisation of squares.

CSV is header-less: ``n`` lines of comma-separated integers. JSON is an object
``{"n", "a_min", "magic_constant", "rows"}``; the stored constant is checked
against ``(n, a_min)`` when read back.
"""

from __future__ import annotations

import json

import numpy as np

from .core import MagicSquareError, Square, magic_constant


class DocumentError(MagicSquareError):
    """A matrix document could not be parsed."""


FORMATS = ("csv", "json")


def to_csv(square: Square) -> str:
    return "".join(",".join(map(str, row)) + "\n" for row in square.tolist())


def to_json(square: Square) -> str:
    doc = {
        "n": square.n,
        "a_min": square.a_min,
        "magic_constant": magic_constant(square.n, square.a_min),
        "rows": square.tolist(),
    }
    return json.dumps(doc) + "\n"


def dumps(square: Square, fmt: str = "csv") -> str:
    if fmt == "csv":
        return to_csv(square)
    if fmt == "json":
        return to_json(square)
    raise ValueError(f"unknown format {fmt!r}; expected one of {FORMATS}")


def _square(rows: list[list[int]], a_min: int) -> Square:
    try:
        return Square(np.array(rows, dtype=np.int64), a_min)
    except (MagicSquareError, TypeError, OverflowError) as exc:
        raise DocumentError(str(exc)) from exc


def from_csv(text: str, a_min: int = 1) -> Square:
    rows = []
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        try:
            rows.append([int(tok) for tok in line.split(",")])
        except ValueError:
            raise DocumentError(f"line {lineno}: non-integer entry in {line!r}") from None
    if not rows:
        raise DocumentError("empty document")
    n = len(rows)
    for lineno, row in enumerate(rows, 1):
        if len(row) != n:
            raise DocumentError(f"row {lineno} has {len(row)} entries, expected {n}")
    return _square(rows, a_min)


def from_json(text: str, a_min: int | None = None) -> Square:
    """Parse a JSON document; ``a_min`` overrides the document's own value."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict) or "rows" not in doc:
        raise DocumentError("JSON document must be an object with a 'rows' field")
    rows = doc["rows"]
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise DocumentError("'rows' must be a list of lists")
    if not all(isinstance(x, int) and not isinstance(x, bool) for r in rows for x in r):
        raise DocumentError("'rows' must contain integers only")
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise DocumentError("'rows' is not square")
    if "n" in doc and doc["n"] != n:
        raise DocumentError(f"'n' is {doc['n']} but there are {n} rows")
    doc_min = doc.get("a_min", 1)
    square = _square(rows, doc_min if a_min is None else a_min)
    if "magic_constant" in doc:
        try:
            expected = magic_constant(n, doc_min)
        except (MagicSquareError, TypeError) as exc:
            raise DocumentError(str(exc)) from exc
        if doc["magic_constant"] != expected:
            raise DocumentError(
                f"'magic_constant' is {doc['magic_constant']}, expected {expected} for n={n}, a_min={doc_min}"
            )
    return square


def loads(text: str, fmt: str | None = None, a_min: int | None = None) -> Square:
    """Parse either format; with ``fmt=None`` the format is sniffed."""
    if fmt is None:
        fmt = "json" if text.lstrip().startswith("{") else "csv"
    if fmt == "json":
        return from_json(text, a_min)
    if fmt == "csv":
        return from_csv(text, 1 if a_min is None else a_min)
    raise ValueError(f"unknown format {fmt!r}; expected one of {FORMATS}")
