"""Radius of compactness.

rho(x) is the supremum of radii r for which the open ball B(x, r) has
compact closure.  It is either +infinity everywhere (Heine-Borel regime) or
finite everywhere and 1-Lipschitz.  Nothing here is estimated: values come
from the compactness model attached to the presentation.
"""
from __future__ import annotations

from .metric import INF, format_rational
from .serialize import point_json
from .spaces import MetricSpace, NetworkSpace


class RhoFunction:
    """Per-point extended rational values of rho."""

    def __init__(self, values: dict):
        self.values = dict(values)

    def __getitem__(self, x):
        try:
            return self.values[x]
        except KeyError:
            raise KeyError(f"unknown point id {x!r}") from None

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __eq__(self, other):
        return isinstance(other, RhoFunction) and self.values == other.values

    def __repr__(self):
        vals = set(self.values.values())
        if len(vals) == 1:
            return f"RhoFunction(const={format_rational(vals.pop())}, n={len(self)})"
        return f"RhoFunction(n={len(self)})"

    def is_constant(self) -> bool:
        return len(set(self.values.values())) <= 1

    def all_infinite(self) -> bool:
        return all(v == INF for v in self.values.values())

    def to_json(self):
        return [[point_json(p), format_rational(v)] for p, v in self.values.items()]


def rho_from_sites(space: MetricSpace) -> RhoFunction:
    """rho(x) = min over sites s of d(x, s), or the gap delta when x is s.

    Each site stands for an infinite uniform cluster: a ball stays
    relatively compact exactly while it holds finitely many cluster points.
    With no sites the space is Heine-Borel and rho is +infinity.
    """
    values = {}
    for x in space.points:
        best = INF
        for s in space.sites:
            v = s.delta if x == s.point else space.distance(x, s.point)
            if v < best:
                best = v
        values[x] = best
    return RhoFunction(values)


def rho_network(space: NetworkSpace) -> RhoFunction:
    """Constant rho of a 1-complex window.

    Compact spaces and uncapped (proper) spaces are Heine-Borel.  A capped
    non-compact space has rho = c: balls of radius at most c are finite
    subcomplexes, any larger ball is the whole space.
    """
    if space.is_compact or space.cap is None:
        value = INF
    else:
        value = space.cap
    return RhoFunction({v: value for v in space.points})


def rho(space) -> RhoFunction:
    if isinstance(space, NetworkSpace):
        return rho_network(space)
    if space.rho_kind == "explicit":
        return RhoFunction({p: space.explicit[p] for p in space.points})
    if space.rho_kind == "sites":
        return rho_from_sites(space)
    return RhoFunction({p: INF for p in space.points})


def check_lipschitz(r: RhoFunction, space):
    """First pair (x, y) with |rho(x) - rho(y)| > d(x, y), or None.

    A pair with exactly one infinite value is a violation.
    """
    if r.is_constant():
        return None
    pts = list(space.points)
    for i, x in enumerate(pts):
        rx = r[x]
        dx = space.distances_from(x)
        for y in pts[i + 1:]:
            ry = r[y]
            if rx == INF and ry == INF:
                continue
            if rx == INF or ry == INF or abs(rx - ry) > dx[y]:
                return (x, y)
    return None


def heine_borel(space) -> bool:
    return rho(space).all_infinite()
