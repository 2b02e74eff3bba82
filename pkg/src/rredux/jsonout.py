"""Canonical JSON emission for machine-readable CLI output.

Byte-stable for a given value: single line, keys sorted, every float
rendered with exactly six decimal places.  The fixed float format is the
point; the stdlib encoder's shortest-repr floats would make golden files
churn on any arithmetic reordering.
"""

from __future__ import annotations

import json


def canonical(value) -> str:
    """Serialize ``value`` to canonical JSON text (no trailing newline)."""
    if value is None:
        return "null"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return f"{value:.6f}"
    if isinstance(value, str):
        return json.dumps(value, ensure_ascii=False)
    if isinstance(value, dict):
        for key in value:
            if not isinstance(key, str):
                raise TypeError(f"JSON object keys must be strings, got {key!r}")
        items = (
            f"{json.dumps(k, ensure_ascii=False)}: {canonical(value[k])}"
            for k in sorted(value)
        )
        return "{" + ", ".join(items) + "}"
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(canonical(v) for v in value) + "]"
    raise TypeError(f"cannot serialize {type(value).__name__} to JSON")
