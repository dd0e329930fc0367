"""Reading and writing matrices and operator specs.

Matrix JSON:   {"rows": N, "cols": N, "entries": [[re, im], ...]}  (row-major)
Matrix CSV:    one row per matrix row, cells like ``1.5-2j``
Operator JSON: {"kind": "diagonal", "values": [[re, im], ...]}, or
               {"kind": "shift"}, {"kind": "backshift"},
               {"kind": "weighted_shift", "values": [...]},
               {"kind": "dense", "rows": .., "cols": .., "entries": [...]}
"""

import csv
import io
import json
from pathlib import Path

import numpy as np

from .errors import InputFormatError
from .operators import KINDS, OperatorSpec


def parse_scalar(value):
    """[re, im] pair, bare number, or a string such as ``'1-2j'``."""
    if isinstance(value, (list, tuple)):
        if len(value) != 2:
            raise InputFormatError(f"complex entry must be [re, im], got {value!r}")
        re, im = value
        if isinstance(re, bool) or isinstance(im, bool):
            raise InputFormatError(f"bad complex entry {value!r}")
        try:
            return complex(float(re), float(im))
        except (TypeError, ValueError) as exc:
            raise InputFormatError(f"bad complex entry {value!r}") from exc
    if isinstance(value, bool):
        raise InputFormatError(f"bad complex entry {value!r}")
    if isinstance(value, (int, float)):
        return complex(value)
    if isinstance(value, str):
        text = value.strip().replace(" ", "").replace("i", "j")
        try:
            return complex(text)
        except ValueError as exc:
            raise InputFormatError(f"cannot parse complex number {value!r}") from exc
    raise InputFormatError(f"bad complex entry {value!r}")


def matrix_from_dict(obj):
    try:
        rows, cols = int(obj["rows"]), int(obj["cols"])
        entries = obj["entries"]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputFormatError("matrix JSON needs integer 'rows', 'cols' and an 'entries' list") from exc
    if rows < 1 or cols < 1:
        raise InputFormatError("matrix dimensions must be positive")
    if not isinstance(entries, list):
        raise InputFormatError("'entries' must be a list")
    # flat row-major list of entries, or a list of rows
    if len(entries) == rows * cols:
        flat = entries
    elif len(entries) == rows and all(isinstance(r, list) and len(r) == cols for r in entries):
        flat = [c for r in entries for c in r]
    else:
        flat = entries
    if len(flat) != rows * cols:
        raise InputFormatError(f"expected {rows * cols} entries, got {len(flat)}")
    data = np.array([parse_scalar(v) for v in flat], dtype=np.complex128).reshape(rows, cols)
    if not np.all(np.isfinite(data)):
        raise InputFormatError("matrix has non-finite entries")
    return data


def matrix_to_dict(m):
    m = np.asarray(m, dtype=np.complex128)
    return {
        "rows": int(m.shape[0]),
        "cols": int(m.shape[1]),
        "entries": [[float(z.real), float(z.imag)] for z in m.ravel()],
    }


def read_matrix_csv(text):
    rows = [r for r in csv.reader(io.StringIO(text)) if any(cell.strip() for cell in r)]
    if not rows:
        raise InputFormatError("empty CSV matrix")
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise InputFormatError("ragged CSV matrix")
    data = np.array([[parse_scalar(c) for c in r] for r in rows], dtype=np.complex128)
    if not np.all(np.isfinite(data)):
        raise InputFormatError("matrix has non-finite entries")
    return data


def format_complex(z):
    z = complex(z)
    return f"{z.real!r}{'+' if z.imag >= 0 or np.isnan(z.imag) else '-'}{abs(z.imag)!r}j"


def write_matrix_csv(m):
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    for row in np.asarray(m):
        writer.writerow([format_complex(z) for z in row])
    return out.getvalue()


def operator_from_dict(obj, label=""):
    if not isinstance(obj, dict):
        raise InputFormatError("operator JSON must be an object")
    kind = obj.get("kind", "dense")
    kind = {"weighted-shift": "weighted_shift", "back_shift": "backshift", "back-shift": "backshift"}.get(kind, kind)
    label = obj.get("label", label)
    if kind not in KINDS:
        raise InputFormatError(f"unknown operator kind {kind!r}")
    try:
        if kind == "dense":
            return OperatorSpec.dense(matrix_from_dict(obj), label=label)
        if kind in ("shift", "backshift"):
            return OperatorSpec(kind, label=label)
        values = obj.get("values", obj.get("weights"))
        if not isinstance(values, list) or not values:
            raise InputFormatError(f"{kind} operator needs a non-empty 'values' list")
        return OperatorSpec(kind, values=tuple(parse_scalar(v) for v in values), label=label)
    except ValueError as exc:
        if isinstance(exc, InputFormatError):
            raise
        raise InputFormatError(str(exc)) from exc


def load_operator(path):
    """Operator spec from a JSON (matrix or operator) or CSV (matrix) file."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise InputFormatError(f"cannot read {path}: {exc}") from exc
    if path.suffix.lower() == ".csv":
        return OperatorSpec.dense(read_matrix_csv(text), label=path.stem)
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputFormatError(f"{path} is not valid JSON: {exc}") from exc
    return operator_from_dict(obj, label=path.stem)
