"""
Deterministic JSON and CSV rendering for CLI artifacts.

Floats are rounded to Settings.float_digits significant digits (17 by
default, which round-trips every double). CSV cells print them in that
form; JSON goes through json.dumps, which writes the shortest repr of the
rounded value. Identical inputs give byte-identical output either way.
Non-finite floats become the strings "inf", "-inf" and "nan" in JSON and the
same bare tokens in CSV.
"""

import csv
import io
import json
import math
from typing import Any, Iterable, Optional, Sequence

import numpy as np

from config import get_settings


def format_float(value: float, digits: Optional[int] = None) -> str:
    value = float(value)
    if math.isnan(value):
        return "nan"
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    digits = digits or get_settings().float_digits
    return f"{value:.{digits}g}"


def _jsonable(value: Any) -> Any:
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if value is None or isinstance(value, (bool, np.bool_)):
        return None if value is None else bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        rounded = float(format_float(value))
        return rounded if math.isfinite(rounded) else format_float(rounded)
    return str(value)


def dumps_json(value: Any) -> str:
    """Render nested dicts, lists and scalars as one JSON line."""
    return json.dumps(_jsonable(value), allow_nan=False)


def _cell(value: Any) -> str:
    if isinstance(value, (float, np.floating)):
        return format_float(value)
    return str(value)


def csv_text(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    """Comma-separated text with a header row and LF line endings."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_cell(v) for v in row])
    return buffer.getvalue()
