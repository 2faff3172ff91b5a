"""Named families of network spaces, generated level by level.

Every family is deterministic and nested: the level-n graph is an induced
subgraph of the level-(n+1) graph, and the boundary marks at level n are
exactly the vertices that gain neighbours at level n+1.  Compact families
(``cycle``) ignore the level.
"""
from __future__ import annotations

from fractions import Fraction

from .errors import CatalogError
from .metric import WeightedGraph, to_rational
from .spaces import NetworkSpace, Piece


def _ray(p, n):
    w = p["w"]
    verts = list(range(n + 1))
    edges = [(i, i + 1, w) for i in range(n)]
    return verts, edges, 0, {n}, True


def _line(p, n):
    w = p["w"]
    verts = list(range(-n, n + 1))
    edges = [(i, i + 1, w) for i in range(-n, n)]
    return verts, edges, 0, {-n, n}, True


def _ladder(p, n):
    w = p["w"]
    verts = [(i, s) for i in range(-n, n + 1) for s in (0, 1)]
    edges = [((i, 0), (i, 1), w) for i in range(-n, n + 1)]
    edges += [((i, s), (i + 1, s), w) for s in (0, 1) for i in range(-n, n)]
    boundary = {(i, s) for i in (-n, n) for s in (0, 1)}
    return verts, edges, (0, 0), boundary, True


def _grid(p, n):
    w = p["w"]
    rng = range(-n, n + 1)
    verts = [(i, j) for i in rng for j in rng]
    edges = [((i, j), (i + 1, j), w) for i in range(-n, n) for j in rng]
    edges += [((i, j), (i, j + 1), w) for i in rng for j in range(-n, n)]
    boundary = {(i, j) for i, j in verts if max(abs(i), abs(j)) == n}
    return verts, edges, (0, 0), boundary, True


def _tree(p, n):
    k, w = p["k"], p["w"]
    verts = [()]
    edges = []
    frontier = [()]
    for depth in range(n):
        nxt = []
        for v in frontier:
            for c in range(k if depth == 0 else k - 1):
                child = v + (c,)
                verts.append(child)
                edges.append((v, child, w))
                nxt.append(child)
        frontier = nxt
    return verts, edges, (), set(frontier), True


def _cycle(p, n):
    m, w = p["m"], p["w"]
    verts = list(range(m))
    edges = [(i, (i + 1) % m, w) for i in range(m)]
    return verts, edges, 0, set(), False


def _check_w(p):
    if p["w"] <= 0:
        raise CatalogError("edge weight w must be positive")


def _check_tree(p):
    _check_w(p)
    if p["k"] < 2:
        raise CatalogError("tree degree k must be at least 2")


def _check_cycle(p):
    _check_w(p)
    if p["m"] < 3:
        raise CatalogError("cycle length m must be at least 3")


def _check_paper(p):
    if p["m"] < 3:
        raise CatalogError("cycle length m must be at least 3")
    if not 0 < p["w"] < 1:
        raise CatalogError("paper_example needs an edge weight 0 < w < 1")


def _check_union(p):
    if p["c"] <= 0:
        raise CatalogError("cap c must be positive")
    if not p["pieces"]:
        raise CatalogError("disjoint_cap needs at least one piece")


ONE = Fraction(1)

# name -> (parameter schema, generator, validator, summary); schema maps a
# parameter to (kind, default) with default None meaning required
BASIC = {
    "ray": ({"w": ("rational", ONE)}, _ray, _check_w, "half-line [0, oo) with integer vertices"),
    "line": ({"w": ("rational", ONE)}, _line, _check_w, "real line with integer vertices"),
    "ladder": ({"w": ("rational", ONE)}, _ladder, _check_w, "line x {0,1} with rungs"),
    "grid": ({"w": ("rational", ONE)}, _grid, _check_w, "integer lattice Z^2 (product of two lines)"),
    "tree": ({"k": ("int", 3), "w": ("rational", ONE)}, _tree, _check_tree, "k-regular tree"),
    "cycle": ({"m": ("int", None), "w": ("rational", ONE)}, _cycle, _check_cycle, "m-cycle (compact)"),
}
UNIONS = {
    "disjoint_cap": ({"pieces": ("pieces", None), "c": ("rational", None)}, _check_union,
                     "disjoint union of basic families with metric min(d, c)"),
    "paper_example": ({"m": ("int", 12), "w": ("rational", Fraction(1, 10))}, _check_paper,
                      "grid (plane) plus m-cycle (circle), weights w, metric min(d, 1)"),
}


def families() -> list[dict]:
    out = []
    for name, (schema, _, _, summary) in BASIC.items():
        out.append({"name": name, "params": _schema_json(schema), "summary": summary})
    for name, (schema, _, summary) in UNIONS.items():
        out.append({"name": name, "params": _schema_json(schema), "summary": summary})
    return out


def _schema_json(schema):
    return {k: {"kind": kind, "default": None if d is None else (str(d) if isinstance(d, Fraction) else d)}
            for k, (kind, d) in schema.items()}


def _coerce(kind, value):
    if kind == "int":
        if isinstance(value, bool) or not isinstance(value, (int, str)):
            raise CatalogError(f"expected an integer, got {value!r}")
        try:
            return int(value)
        except ValueError:
            raise CatalogError(f"expected an integer, got {value!r}") from None
    if kind == "rational":
        try:
            return to_rational(value)
        except (TypeError, ValueError, ZeroDivisionError):
            raise CatalogError(f"expected a rational, got {value!r}") from None
    if kind == "pieces":
        if isinstance(value, str):
            import json
            value = json.loads(value)
        pieces = []
        for item in value:
            if isinstance(item, str):
                fam, raw = item, {}
            elif isinstance(item, dict):
                fam, raw = item.get("family"), item.get("params", {})
            else:
                fam, raw = item[0], item[1] if len(item) > 1 else {}
            if fam not in BASIC:
                raise CatalogError(f"disjoint_cap pieces must be basic families, got {fam!r}")
            pieces.append((fam, normalize_params(fam, raw)))
        return tuple(pieces)
    raise AssertionError(kind)


def normalize_params(name, params=None) -> tuple:
    """Canonical, hashable ``((key, value), ...)`` form of a family's parameters."""
    if name in BASIC:
        schema = BASIC[name][0]
    elif name in UNIONS:
        schema = UNIONS[name][0]
    else:
        raise CatalogError(f"unknown family {name!r}")
    if isinstance(params, tuple):
        params = dict(params)
    params = dict(params or {})
    unknown = set(params) - set(schema)
    if unknown:
        raise CatalogError(f"unknown parameter(s) for {name}: {sorted(unknown)}")
    out = {}
    for key, (kind, default) in schema.items():
        if key in params:
            out[key] = _coerce(kind, params[key])
        elif default is None:
            raise CatalogError(f"{name} requires parameter {key!r}")
        else:
            out[key] = default
    if name in BASIC:
        BASIC[name][2](out)
    else:
        UNIONS[name][1](out)
    return tuple(sorted(out.items()))


def catalog_family(name, params=None, level=1, cap=None) -> NetworkSpace:
    """Generate family ``name`` at truncation ``level``.

    ``cap`` overrides the family's own cap (unions) or caps a basic family.
    """
    if isinstance(level, bool) or not isinstance(level, int) or level < 1:
        raise CatalogError(f"level must be a positive integer, got {level!r}")
    canon = normalize_params(name, params)
    p = dict(canon)
    if name in BASIC:
        verts, edges, base, boundary, infinite = BASIC[name][1](p, level)
        graph = WeightedGraph(tuple(verts), tuple(edges))
        piece = Piece(name, canon, infinite, base, frozenset(verts), p["w"])
        return NetworkSpace(graph, base, cap, family=name, params=canon, level=level,
                            boundary=boundary, pieces=[piece])
    if name == "paper_example":
        pieces = (("grid", normalize_params("grid", {"w": p["w"]})),
                  ("cycle", normalize_params("cycle", {"m": p["m"], "w": p["w"]})))
        c = ONE
    else:
        pieces, c = p["pieces"], p["c"]
    if cap is not None:
        c = to_rational(cap)
    verts, edges, boundary, plist = [], [], set(), []
    for idx, (fam, fparams) in enumerate(pieces):
        lv, le, lb, lbd, linf = BASIC[fam][1](dict(fparams), level)
        tag = lambda v, idx=idx: (idx, v)  # noqa: E731
        verts += [tag(v) for v in lv]
        edges += [(tag(u), tag(v), w) for u, v, w in le]
        boundary |= {tag(v) for v in lbd}
        plist.append(Piece(fam, fparams, linf, tag(lb), frozenset(tag(v) for v in lv), dict(fparams)["w"]))
    base = next((pc.anchor for pc in plist if pc.infinite), plist[0].anchor)
    graph = WeightedGraph(tuple(verts), tuple(edges))
    return NetworkSpace(graph, base, c, family=name, params=canon, level=level,
                        boundary=boundary, pieces=plist, tagged=True)


def paper_example(m=12, level=5, w=Fraction(1, 10)) -> NetworkSpace:
    return catalog_family("paper_example", {"m": m, "w": w}, level)
