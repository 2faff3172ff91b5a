"""JSON helpers shared by reports: point ids, rationals and stable dumping."""
from __future__ import annotations

import hashlib
import json
from fractions import Fraction

from .metric import INF, format_rational


def point_json(p):
    """Tuple ids (lattice points, tree paths, union tags) become JSON lists."""
    if isinstance(p, tuple):
        return [point_json(x) for x in p]
    return p


def point_from_json(p):
    if isinstance(p, list):
        return tuple(point_from_json(x) for x in p)
    return p


def point_label(p) -> str:
    if isinstance(p, tuple):
        return "(" + ",".join(point_label(x) for x in p) + ")"
    return str(p)


def jsonable(obj):
    """Recursively convert report values: rationals to strings, tuples to lists."""
    if isinstance(obj, Fraction) or (isinstance(obj, float) and obj == INF):
        return format_rational(obj)
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, frozenset, set)):
        items = [jsonable(x) for x in obj]
        if isinstance(obj, (set, frozenset)):
            items.sort(key=lambda v: json.dumps(v, sort_keys=True))
        return items
    if hasattr(obj, "to_json"):
        return jsonable(obj.to_json())
    if isinstance(obj, float):
        raise TypeError(f"refusing to serialize inexact float {obj!r}")
    return obj


def dumps(obj) -> str:
    return json.dumps(jsonable(obj), sort_keys=True, indent=2) + "\n"


def digest(obj) -> str:
    text = json.dumps(jsonable(obj), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(text.encode()).hexdigest()
