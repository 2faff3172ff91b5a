"""Exact rational metric arithmetic.

Distances are :class:`fractions.Fraction` values.  The extended value
``INF`` (``math.inf``) stands for +infinity: it compares greater than every
Fraction and absorbs addition, so the two mix without special casing.
"""
from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Sequence

import numpy as np

INF = math.inf


def to_rational(value) -> Fraction:
    """Parse an exact rational from a Fraction, int or ``"num/den"`` string."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"not an exact rational: {value!r}")


def to_ext_rational(value):
    """Like :func:`to_rational` but also accepts ``"inf"`` and ``math.inf``."""
    if isinstance(value, float):
        if value == INF:
            return INF
        raise TypeError(f"floats are not exact: {value!r}")
    if isinstance(value, str) and value.strip().lower() in ("inf", "+inf", "infinity"):
        return INF
    return to_rational(value)


def format_rational(value) -> str:
    """Serialize as ``"num/den"`` or ``"inf"``; the inverse of :func:`to_ext_rational`."""
    if value == INF:
        return "inf"
    value = to_rational(value)
    return f"{value.numerator}/{value.denominator}"


def is_inf(value) -> bool:
    return value == INF


@dataclass(frozen=True)
class DistanceMatrix:
    """Square matrix of exact distances indexed by point ids.

    Entries may be ``INF`` (disconnected pairs of a graph metric); such a
    matrix is not a metric until passed through :func:`cap_metric`.
    """
    points: tuple
    rows: tuple
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        points = tuple(self.points)
        rows = tuple(tuple(to_ext_rational(v) for v in row) for row in self.rows)
        if len(rows) != len(points) or any(len(r) != len(points) for r in rows):
            raise ValueError("distance matrix must be square and match the point list")
        index = {p: i for i, p in enumerate(points)}
        if len(index) != len(points):
            raise ValueError("duplicate point ids")
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "_index", index)

    @classmethod
    def from_rows(cls, rows, points=None):
        rows = [list(r) for r in rows]
        if points is None:
            points = range(len(rows))
        return cls(tuple(points), tuple(tuple(r) for r in rows))

    def __len__(self):
        return len(self.points)

    def index(self, x) -> int:
        try:
            return self._index[x]
        except KeyError:
            raise KeyError(f"unknown point id {x!r}") from None

    def __contains__(self, x):
        return x in self._index

    def __call__(self, x, y):
        return self.rows[self.index(x)][self.index(y)]

    def distances_from(self, x) -> dict:
        row = self.rows[self.index(x)]
        return dict(zip(self.points, row))

    def has_infinite(self) -> bool:
        return any(v == INF for row in self.rows for v in row)

    def to_json(self):
        return [[format_rational(v) for v in row] for row in self.rows]


@dataclass(frozen=True)
class Violation:
    kind: str            # "diagonal" | "symmetry" | "positivity" | "triangle" | "infinite"
    witness: tuple       # point ids
    detail: str

    def to_json(self):
        from .serialize import point_json
        return {"kind": self.kind, "witness": [point_json(p) for p in self.witness],
                "detail": self.detail}


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple = ()

    @property
    def valid(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.valid

    def kinds(self) -> set:
        return {v.kind for v in self.violations}

    def summary(self) -> str:
        if self.valid:
            return "valid"
        head = "; ".join(v.detail for v in self.violations[:3])
        more = len(self.violations) - 3
        return head + (f" (+{more} more)" if more > 0 else "")

    def to_json(self):
        return {"valid": self.valid, "violations": [v.to_json() for v in self.violations]}


def _integer_matrix(m: DistanceMatrix):
    """Scale finite entries to a common denominator; INF becomes a sentinel.

    The sentinel exceeds twice the largest finite entry, so any triangle
    comparison that involves it resolves the same way +infinity would.
    """
    finite = [v for row in m.rows for v in row if v != INF]
    scale = math.lcm(*(v.denominator for v in finite)) if finite else 1
    top = max((abs(v) for v in finite), default=Fraction(0))
    sentinel = 4 * int(top * scale) + 4
    ints = [[sentinel if v == INF else int(v * scale) for v in row] for row in m.rows]
    dtype = np.int64 if 3 * sentinel < 2 ** 62 else object
    return np.array(ints, dtype=dtype).reshape(len(m), len(m)), sentinel


def validate_metric(m: DistanceMatrix) -> ValidationReport:
    """Check every metric axiom and list each violation with a witness.

    Triangle witnesses are triples ``(a, b, c)`` with ``d(a,c) > d(a,b) + d(b,c)``
    and ``a`` before ``c`` in point order.
    """
    n = len(m)
    pts = m.points
    out: list[Violation] = []
    for i in range(n):
        if m.rows[i][i] != 0:
            out.append(Violation("diagonal", (pts[i],), f"d({pts[i]!r},{pts[i]!r}) = {m.rows[i][i]} != 0"))
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            v = m.rows[i][j]
            if i < j and v != m.rows[j][i]:
                out.append(Violation("symmetry", (pts[i], pts[j]),
                                     f"d({pts[i]!r},{pts[j]!r}) = {v} != {m.rows[j][i]} = d({pts[j]!r},{pts[i]!r})"))
            if v == INF:
                if i < j:
                    out.append(Violation("infinite", (pts[i], pts[j]),
                                         f"d({pts[i]!r},{pts[j]!r}) is infinite"))
            elif v <= 0:
                out.append(Violation("positivity", (pts[i], pts[j]),
                                     f"d({pts[i]!r},{pts[j]!r}) = {v} is not positive"))
    if n >= 3:
        D, _ = _integer_matrix(m)
        found = []
        for j in range(n):
            bad = D > (D[:, j:j + 1] + D[j:j + 1, :])
            bad[j, :] = False
            bad[:, j] = False
            for i, k in np.argwhere(np.triu(bad, 1)):
                found.append((int(i), j, int(k)))
        for i, j, k in sorted(found):
            out.append(Violation("triangle", (pts[i], pts[j], pts[k]),
                                 f"d({pts[i]!r},{pts[k]!r}) = {m.rows[i][k]} > "
                                 f"{m.rows[i][j]} + {m.rows[j][k]}"))
    return ValidationReport(tuple(out))


@dataclass(frozen=True)
class WeightedGraph:
    """Undirected graph with positive exact edge weights.

    Parallel edges collapse to the lightest one; self-loops are rejected.
    """
    vertices: tuple
    edges: tuple
    adjacency: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        vertices = tuple(self.vertices)
        adj: dict[Any, dict] = {v: {} for v in vertices}
        if len(adj) != len(vertices):
            raise ValueError("duplicate vertex ids")
        edges = []
        for u, v, w in self.edges:
            w = to_rational(w)
            if w <= 0:
                raise ValueError(f"edge ({u!r}, {v!r}) has nonpositive weight {w}")
            if u == v:
                raise ValueError(f"self-loop at {u!r}")
            if u not in adj or v not in adj:
                raise ValueError(f"edge ({u!r}, {v!r}) uses an unknown vertex")
            if v not in adj[u] or w < adj[u][v]:
                adj[u][v] = w
                adj[v][u] = w
            edges.append((u, v, w))
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "edges", tuple(edges))
        object.__setattr__(self, "adjacency", adj)

    def __len__(self):
        return len(self.vertices)

    def __contains__(self, v):
        return v in self.adjacency

    def neighbors(self, v):
        return self.adjacency[v]

    def min_weight(self):
        return min((w for _, _, w in self.edges), default=None)

    def connected_components(self, within=None) -> list[list]:
        """Components (in vertex order) of the subgraph induced on ``within``."""
        allowed = set(self.vertices) if within is None else set(within)
        seen = set()
        comps = []
        for s in self.vertices:
            if s not in allowed or s in seen:
                continue
            seen.add(s)
            comp, stack = [s], [s]
            while stack:
                u = stack.pop()
                for v in self.adjacency[u]:
                    if v in allowed and v not in seen:
                        seen.add(v)
                        comp.append(v)
                        stack.append(v)
            comps.append(comp)
        return comps

    def to_json(self):
        from .serialize import point_json
        return {"vertices": [point_json(v) for v in self.vertices],
                "edges": [[point_json(u), point_json(v), format_rational(w)] for u, v, w in self.edges]}


def single_source_distances(g: WeightedGraph, source) -> dict:
    """Exact Dijkstra from ``source``; unreachable vertices are absent."""
    if source not in g:
        raise KeyError(f"unknown vertex {source!r}")
    weights = [w for _, _, w in g.edges]
    scale = math.lcm(*(w.denominator for w in weights)) if weights else 1
    dist = {source: 0}
    heap = [(0, 0, source)]
    tiebreak = 1
    done = set()
    while heap:
        du, _, u = heapq.heappop(heap)
        if u in done:
            continue
        done.add(u)
        for v, w in g.adjacency[u].items():
            nd = du + int(w * scale)
            if v not in dist or nd < dist[v]:
                dist[v] = nd
                heapq.heappush(heap, (nd, tiebreak, v))
                tiebreak += 1
    return {v: Fraction(d, scale) for v, d in dist.items()}


def shortest_path_metric(g: WeightedGraph) -> DistanceMatrix:
    """All-pairs path metric; disconnected pairs get ``INF``."""
    rows = []
    for s in g.vertices:
        dist = single_source_distances(g, s)
        rows.append(tuple(dist.get(v, INF) for v in g.vertices))
    return DistanceMatrix(g.vertices, tuple(rows))


def cap_metric(m: DistanceMatrix, c) -> DistanceMatrix:
    """Replace every entry by ``min(entry, c)``; the result is a metric."""
    c = to_rational(c)
    if c <= 0:
        raise ValueError(f"cap must be positive, got {c}")
    rows = tuple(tuple(v if v <= c else c for v in row) for row in m.rows)
    return DistanceMatrix(m.points, rows)


def ball(space, x, r) -> set:
    """Open ball ``{y : d(x, y) < r}`` with exact strict comparison.

    ``space`` is anything with ``distances_from(x)``: a DistanceMatrix,
    MetricSpace or NetworkSpace.
    """
    r = to_ext_rational(r)
    if r <= 0:
        raise ValueError("radius must be positive")
    return {y for y, d in space.distances_from(x).items() if d < r}


def matrix_from_function(points: Sequence, d) -> DistanceMatrix:
    points = tuple(points)
    return DistanceMatrix(points, tuple(tuple(d(x, y) for y in points) for x in points))


def rationals(values: Iterable) -> list[Fraction]:
    return [to_rational(v) for v in values]
