"""Space presentations.

Two kinds of finite window onto a locally compact metric space:

* :class:`MetricSpace` ("class A"): a finite point set with an exact distance
  matrix and a radius-of-compactness model (explicit table, cluster sites,
  or identically infinite).
* :class:`NetworkSpace` ("class B"): a weighted graph read as a 1-complex,
  optionally capped, carrying per-component growth flags and the boundary
  marks of its truncation level.  Catalog families live in
  :mod:`endscope.catalog`.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import CapRequiredError, InvalidMetricError, LipschitzError
from .metric import (INF, DistanceMatrix, WeightedGraph, format_rational,
                     single_source_distances, to_ext_rational, to_rational,
                     validate_metric)
from .serialize import point_from_json, point_json

RHO_KINDS = ("explicit", "sites", "infinite")


@dataclass(frozen=True)
class Site:
    """A point carrying an infinite uniform cluster at gap ``delta``."""
    point: object
    delta: Fraction


class MetricSpace:
    """Finite metric presentation with a radius-of-compactness model."""

    def __init__(self, matrix: DistanceMatrix, rho_kind="infinite", explicit=None, sites=()):
        self.matrix = matrix
        self.points = matrix.points
        self.rho_kind = rho_kind
        self.explicit = dict(explicit) if explicit is not None else None
        self.sites = tuple(sites)
        self.site_points = frozenset(s.point for s in self.sites)

    def __len__(self):
        return len(self.points)

    def __contains__(self, x):
        return x in self.matrix

    def __repr__(self):
        return f"MetricSpace(n={len(self)}, rho={self.rho_kind}, sites={len(self.sites)})"

    def distance(self, x, y):
        return self.matrix(x, y)

    def distances_from(self, x) -> dict:
        return self.matrix.distances_from(x)

    def to_json(self):
        if self.rho_kind == "explicit":
            rho = {"kind": "explicit", "values": [format_rational(self.explicit[p]) for p in self.points]}
        elif self.rho_kind == "sites":
            rho = {"kind": "sites", "sites": [{"point": point_json(s.point), "delta": format_rational(s.delta)}
                                              for s in self.sites]}
        else:
            rho = {"kind": "infinite"}
        return {"kind": "metric", "points": [point_json(p) for p in self.points],
                "d": self.matrix.to_json(), "rho": rho}


def _parse_sites(raw, matrix):
    sites = []
    seen = set()
    for item in raw:
        if isinstance(item, dict):
            p, delta = point_from_json(item["point"]), item["delta"]
        else:
            p, delta = point_from_json(item[0]), item[1]
        if p not in matrix:
            raise KeyError(f"site {p!r} is not a point of the space")
        if p in seen:
            raise ValueError(f"duplicate site {p!r}")
        delta = to_rational(delta)
        if delta <= 0:
            raise ValueError(f"site {p!r} has nonpositive gap {delta}")
        seen.add(p)
        sites.append(Site(p, delta))
    return sites


def build_finite_space(points, matrix, rho_spec=None) -> MetricSpace:
    """Validate a class-A presentation and return it.

    ``rho_spec`` is ``{"kind": "explicit", "values": [...]}``,
    ``{"kind": "sites", "sites": [{"point": p, "delta": "1/2"}, ...]}`` or
    ``{"kind": "infinite"}`` (the default).  Site-generated and explicit
    tables must be 1-Lipschitz; a failing pair raises :class:`LipschitzError`.
    """
    from .compactness import check_lipschitz, rho

    if not isinstance(matrix, DistanceMatrix):
        matrix = DistanceMatrix(tuple(points), tuple(tuple(r) for r in matrix))
    elif points is not None and tuple(points) != matrix.points:
        raise ValueError("point list does not match the matrix")
    report = validate_metric(matrix)
    if not report.valid:
        raise InvalidMetricError(report)
    rho_spec = rho_spec or {"kind": "infinite"}
    kind = rho_spec.get("kind")
    if kind == "infinite":
        space = MetricSpace(matrix, "infinite")
    elif kind == "explicit":
        values = rho_spec["values"]
        if isinstance(values, dict):
            table = {point_from_json(k) if not isinstance(k, str) else k: to_ext_rational(v)
                     for k, v in values.items()}
        else:
            if len(values) != len(matrix):
                raise ValueError("explicit rho table has the wrong length")
            table = dict(zip(matrix.points, (to_ext_rational(v) for v in values)))
        if set(table) != set(matrix.points):
            raise ValueError("explicit rho table must cover exactly the points")
        for p, v in table.items():
            if v <= 0:
                raise ValueError(f"rho({p!r}) = {v} is not positive")
        space = MetricSpace(matrix, "explicit", explicit=table)
    elif kind == "sites":
        space = MetricSpace(matrix, "sites", sites=_parse_sites(rho_spec.get("sites", ()), matrix))
    else:
        raise ValueError(f"unknown rho_spec kind {kind!r}")
    r = rho(space)
    bad = check_lipschitz(r, space)
    if bad is not None:
        x, y = bad
        raise LipschitzError(x, y, r[x], r[y], space.distance(x, y))
    return space


@dataclass(frozen=True)
class Piece:
    """One graph component of a network window.

    ``infinite`` marks components that keep growing with the level; the
    anchor is the point around which ball complements are taken.
    """
    family: str
    params: tuple
    infinite: bool
    anchor: object
    vertices: frozenset
    weight: object = None  # uniform edge weight of catalog pieces

    @property
    def key(self):
        return (self.family, self.params)


class NetworkSpace:
    """A level of a weighted-graph presentation, read as a 1-complex."""

    def __init__(self, graph: WeightedGraph, basepoint, cap=None, *, family="custom", params=(),
                 level=1, boundary=(), pieces=None, tagged=False):
        if basepoint not in graph:
            raise ValueError(f"basepoint {basepoint!r} is not a vertex")
        if cap is not None:
            cap = to_rational(cap)
            if cap <= 0:
                raise ValueError(f"cap must be positive, got {cap}")
        self.graph = graph
        self.basepoint = basepoint
        self.cap = cap
        self.family = family
        self.params = tuple(params)
        self.level = level
        self.boundary = frozenset(boundary)
        self.tagged = tagged
        if pieces is None:
            pieces = []
            for comp in graph.connected_components():
                anchor = basepoint if basepoint in comp else comp[0]
                pieces.append(Piece("custom", (), False, anchor, frozenset(comp)))
        self.pieces = tuple(pieces)
        self._piece_index = {v: i for i, p in enumerate(self.pieces) for v in p.vertices}
        if len(self._piece_index) != len(graph):
            raise ValueError("pieces must partition the vertices")
        if len(self.pieces) > 1 and cap is None:
            raise CapRequiredError("disconnected network requires a cap")
        self._dist_cache: dict = {}

    def __len__(self):
        return len(self.graph)

    def __contains__(self, v):
        return v in self.graph

    def __repr__(self):
        return (f"NetworkSpace({self.family}, level={self.level}, n={len(self)}, "
                f"pieces={len(self.pieces)}, cap={self.cap})")

    @property
    def points(self):
        return self.graph.vertices

    @property
    def is_compact(self) -> bool:
        return not any(p.infinite for p in self.pieces)

    def piece_of(self, v) -> int:
        """Piece index of ``v``; also defined for ids outside the current window."""
        try:
            return self._piece_index[v]
        except KeyError:
            pass
        if self.tagged and isinstance(v, tuple) and len(v) == 2 and 0 <= v[0] < len(self.pieces):
            return v[0]
        if len(self.pieces) == 1 and self.family != "custom":
            return 0
        raise KeyError(f"unknown point id {v!r}")

    def path_distances_from(self, x) -> dict:
        """Uncapped path distances to every vertex (``INF`` across pieces)."""
        if x not in self.graph:
            raise KeyError(f"unknown point id {x!r}")
        if x not in self._dist_cache:
            d = single_source_distances(self.graph, x)
            self._dist_cache[x] = {v: d.get(v, INF) for v in self.graph.vertices}
        return self._dist_cache[x]

    def distances_from(self, x) -> dict:
        d = self.path_distances_from(x)
        if self.cap is None:
            return dict(d)
        c = self.cap
        return {v: (t if t <= c else c) for v, t in d.items()}

    def distance(self, x, y):
        return self.distances_from(x)[y]

    def metric(self) -> DistanceMatrix:
        pts = self.graph.vertices
        rows = []
        for x in pts:
            d = self.distances_from(x)
            rows.append(tuple(d[y] for y in pts))
        return DistanceMatrix(pts, tuple(rows))

    def to_json(self):
        out = {"kind": "network", "family": self.family,
               "params": [[k, _param_json(v)] for k, v in self.params],
               "level": self.level, "basepoint": point_json(self.basepoint),
               "cap": None if self.cap is None else format_rational(self.cap),
               "boundary": [point_json(v) for v in self.graph.vertices if v in self.boundary],
               "pieces": [{"family": p.family, "params": [[k, _param_json(v)] for k, v in p.params],
                           "infinite": p.infinite, "anchor": point_json(p.anchor),
                           "size": len(p.vertices)} for p in self.pieces]}
        out.update(self.graph.to_json())
        return out


def _param_json(v):
    if isinstance(v, Fraction):
        return format_rational(v)
    if isinstance(v, tuple):
        return [_param_json(x) for x in v]
    return v


def build_network(graph: WeightedGraph, basepoint, cap=None) -> NetworkSpace:
    """Single-level custom network; disconnected graphs need a cap."""
    if basepoint not in graph:
        raise ValueError(f"basepoint {basepoint!r} is not a vertex")
    return NetworkSpace(graph, basepoint, cap)


def as_metric_space(space: NetworkSpace) -> MetricSpace:
    """The vertex set of a finite window with its (capped) path metric."""
    return build_finite_space(space.points, space.metric(), {"kind": "infinite"})
