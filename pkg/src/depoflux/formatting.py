"""Deterministic text output: fixed 17-significant-digit CSV floats and JSON
with shortest round-trip floats (inf/nan mapped to strings/null)."""

from __future__ import annotations

import json
import math


def fmt17(x) -> str:
    """17-significant-digit text for CSV cells (round-trips any double)."""
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return f"{x:.17g}"


def jsonable(obj):
    """Recursively replace non-finite floats so the JSON is standard."""
    if isinstance(obj, float):
        if math.isnan(obj):
            return None
        if math.isinf(obj):
            return "inf" if obj > 0 else "-inf"
        return obj
    if isinstance(obj, dict):
        return {k: jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    return obj


def dumps(obj) -> str:
    """Deterministic JSON text (insertion-ordered keys, 2-space indent)."""
    return json.dumps(jsonable(obj), indent=2, separators=(",", ": ")) + "\n"
