"""Reading space presentations from JSON.

Three input kinds share one envelope::

    {"kind": "metric", "points": [...], "d": [["0/1", ...], ...],
     "rho": {"kind": "explicit" | "sites" | "infinite", ...}}
    {"kind": "network", "vertices": [...], "edges": [[u, v, "1/2"], ...],
     "basepoint": u, "cap": "1/1"}
    {"kind": "catalog", "family": "grid", "params": {...}, "level": 5, "cap": "1/2"}

Rationals are ``"num/den"`` strings (bare integers are accepted too).
"""
from __future__ import annotations

import json

import jsonschema

from .catalog import catalog_family, normalize_params
from .metric import WeightedGraph, format_rational, to_ext_rational
from .serialize import point_from_json
from .spaces import _param_json, build_finite_space, build_network

_RATIONAL = {"oneOf": [{"type": "string", "pattern": r"^\s*-?\d+(\s*/\s*\d+)?\s*$"}, {"type": "integer"}]}
_EXT_RATIONAL = {"oneOf": [_RATIONAL, {"type": "string", "pattern": r"^\s*\+?inf(inity)?\s*$"}]}
_POINT = {"type": ["string", "integer", "array"]}

SCHEMA = {
    "oneOf": [
        {
            "type": "object",
            "properties": {
                "kind": {"const": "metric"},
                "points": {"type": "array", "items": _POINT},
                "d": {"type": "array", "items": {"type": "array", "items": _RATIONAL}},
                "rho": {
                    "oneOf": [
                        {"type": "object", "properties": {"kind": {"const": "infinite"}},
                         "required": ["kind"], "additionalProperties": False},
                        {"type": "object", "properties": {
                            "kind": {"const": "explicit"},
                            "values": {"oneOf": [{"type": "array", "items": _EXT_RATIONAL},
                                                 {"type": "object", "additionalProperties": _EXT_RATIONAL}]}},
                         "required": ["kind", "values"], "additionalProperties": False},
                        {"type": "object", "properties": {
                            "kind": {"const": "sites"},
                            "sites": {"type": "array", "items": {
                                "type": "object",
                                "properties": {"point": _POINT, "delta": _RATIONAL},
                                "required": ["point", "delta"], "additionalProperties": False}}},
                         "required": ["kind", "sites"], "additionalProperties": False},
                    ]
                },
            },
            "required": ["kind", "points", "d"],
            "additionalProperties": False,
        },
        {
            "type": "object",
            "properties": {
                "kind": {"const": "network"},
                "vertices": {"type": "array", "items": _POINT},
                "edges": {"type": "array", "items": {"type": "array", "prefixItems": [_POINT, _POINT, _RATIONAL],
                                                     "minItems": 3, "maxItems": 3}},
                "basepoint": _POINT,
                "cap": {"oneOf": [_RATIONAL, {"type": "null"}]},
            },
            "required": ["kind", "vertices", "edges", "basepoint"],
            "additionalProperties": False,
        },
        {
            "type": "object",
            "properties": {
                "kind": {"const": "catalog"},
                "family": {"type": "string"},
                "params": {"type": "object"},
                "level": {"type": "integer", "minimum": 1},
                "cap": {"oneOf": [_RATIONAL, {"type": "null"}]},
            },
            "required": ["kind", "family"],
            "additionalProperties": False,
        },
    ]
}


class InputError(Exception):
    """Input text that does not parse or does not match the schema."""

    def __init__(self, messages):
        self.messages = list(messages)
        super().__init__("; ".join(self.messages))


def parse_text(text: str) -> dict:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError([f"JSON parse error at line {e.lineno}, column {e.colno}: {e.msg}"]) from None
    check_schema(obj)
    return obj


def check_schema(obj):
    validator = jsonschema.Draft202012Validator(SCHEMA)
    errors = list(validator.iter_errors(obj))
    if not errors:
        return
    messages = []
    kind = obj.get("kind") if isinstance(obj, dict) else None
    if kind not in ("metric", "network", "catalog"):
        raise InputError([f"unknown or missing input kind {kind!r}"])
    branch = {"metric": 0, "network": 1, "catalog": 2}[kind]
    sub = jsonschema.Draft202012Validator(SCHEMA["oneOf"][branch])
    for err in sorted(sub.iter_errors(obj), key=lambda e: list(e.absolute_path)):
        where = "/".join(str(p) for p in err.absolute_path) or "<root>"
        messages.append(f"{where}: {err.message}")
    raise InputError(messages or [e.message for e in errors])


def load_space(obj: dict):
    """Build the space described by a schema-valid input object."""
    kind = obj["kind"]
    if kind == "metric":
        points = [point_from_json(p) for p in obj["points"]]
        return build_finite_space(points, obj["d"], obj.get("rho"))
    if kind == "network":
        vertices = [point_from_json(v) for v in obj["vertices"]]
        edges = [(point_from_json(u), point_from_json(v), w) for u, v, w in obj["edges"]]
        graph = WeightedGraph(tuple(vertices), tuple(edges))
        return build_network(graph, point_from_json(obj["basepoint"]), obj.get("cap"))
    return catalog_family(obj["family"], obj.get("params") or {}, obj.get("level", 1), cap=obj.get("cap"))


def _q(x):
    return format_rational(to_ext_rational(x))


def _cap(obj):
    return None if obj.get("cap") is None else _q(obj["cap"])


def canonical_input(obj: dict) -> dict:
    """Input object with every rational as "num/den", for digests and echoes."""
    kind = obj.get("kind")
    if kind == "metric":
        out = {"kind": "metric", "points": obj["points"], "d": [[_q(x) for x in row] for row in obj["d"]]}
        r = obj.get("rho")
        if r is not None:
            if r["kind"] == "explicit":
                vals = r["values"]
                vals = {k: _q(v) for k, v in vals.items()} if isinstance(vals, dict) else [_q(v) for v in vals]
                r = {"kind": "explicit", "values": vals}
            elif r["kind"] == "sites":
                r = {"kind": "sites", "sites": [{"point": s["point"], "delta": _q(s["delta"])} for s in r["sites"]]}
            out["rho"] = r
        return out
    if kind == "network":
        return {"kind": "network", "vertices": obj["vertices"], "edges": [[u, v, _q(w)] for u, v, w in obj["edges"]],
                "basepoint": obj["basepoint"], "cap": _cap(obj)}
    params = normalize_params(obj["family"], obj.get("params") or {})
    return {"kind": "catalog", "family": obj["family"], "params": [[k, _param_json(v)] for k, v in params],
            "level": obj.get("level", 1), "cap": _cap(obj)}
