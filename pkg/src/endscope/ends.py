"""Counting Freudenthal ends of catalog families.

At a truncation level, remove the closed ball of radius r around each
piece's anchor (uncapped path metric) and count the leftover components
that touch a boundary mark: those are the ones that keep growing and so
escape to infinity.  Components that miss the boundary are transient
pockets and are ignored.  Counting along a schedule of levels and checking
that the count settles gives the end count; a cap never matters because it
leaves the topology alone.
"""
from __future__ import annotations

from dataclasses import dataclass

from .catalog import catalog_family
from .errors import RadiusTooLargeError, ScheduleError
from .metric import INF, format_rational, to_rational
from .spaces import NetworkSpace

DEFAULT_LEVELS = tuple(range(5, 13))
DEFAULT_WINDOW = 4


def certified_radius(space: NetworkSpace):
    """Distance from the anchors to the nearest boundary mark (INF if none).

    Below this radius the ball complement already shows every escaping
    direction that deeper levels would show.
    """
    best = INF
    for piece in space.pieces:
        marks = piece.vertices & space.boundary
        if not marks:
            continue
        d = space.path_distances_from(piece.anchor)
        best = min(best, min(d[v] for v in marks))
    return best


def default_radius(space: NetworkSpace):
    """Largest radius below the certified one, stepping by the lightest edge."""
    R = certified_radius(space)
    if R == INF:
        return to_rational(0)
    return max(R - space.graph.min_weight(), to_rational(0))


def escaping_components(space: NetworkSpace, r) -> int:
    r = to_rational(r)
    if r < 0:
        raise ValueError("radius must be nonnegative")
    R = certified_radius(space)
    if r >= R:
        raise RadiusTooLargeError(f"radius {r} is not below the certified radius {format_rational(R)} "
                                  f"at level {space.level}; use a deeper level")
    count = 0
    for piece in space.pieces:
        if not piece.vertices & space.boundary:
            continue
        d = space.path_distances_from(piece.anchor)
        outside = [v for v in piece.vertices if d[v] > r]
        for comp in space.graph.connected_components(outside):
            if any(v in space.boundary for v in comp):
                count += 1
    return count


@dataclass(frozen=True)
class EndsEstimate:
    family: str
    rows: tuple          # (level, radius, count)
    window: int
    verdict: str         # compact | finite | unbounded | inconclusive
    ends: int | None = None

    @property
    def stabilized(self) -> bool:
        return self.verdict in ("compact", "finite")

    @property
    def one_ended(self) -> bool:
        return self.verdict == "finite" and self.ends == 1

    def describe(self) -> str:
        if self.verdict == "finite":
            return f"finite({self.ends})"
        if self.verdict == "compact":
            return "compact(0 ends)"
        return self.verdict

    def to_json(self):
        return {"family": self.family, "verdict": self.verdict, "ends": self.ends,
                "describe": self.describe(), "window": self.window, "stabilized": self.stabilized,
                "rows": [{"level": lv, "radius": format_rational(r), "count": c} for lv, r, c in self.rows]}


def _check_schedule(schedule):
    prev_level, prev_r = 0, None
    for level, r in schedule:
        if isinstance(level, bool) or not isinstance(level, int) or level <= prev_level:
            raise ScheduleError("schedule levels must be strictly increasing positive integers")
        if r is not None:
            if r < 0 or (prev_r is not None and r < prev_r):
                raise ScheduleError("schedule radii must be nonnegative and nondecreasing")
            prev_r = r
        prev_level = level


def count_ends(family, params=None, schedule=None, window=DEFAULT_WINDOW, levels=None, cap=None) -> EndsEstimate:
    """Run :func:`escaping_components` along ``schedule`` and judge the tail.

    ``schedule`` is a list of ``(level, radius)``; a ``None`` radius (or
    giving only ``levels``) picks :func:`default_radius` for that level.
    finite(k) needs the last ``window`` counts all equal to k; unbounded
    needs them strictly increasing; anything else is inconclusive.
    """
    if window < 1:
        raise ScheduleError("window must be positive")
    if schedule is None:
        schedule = [(lv, None) for lv in (levels or DEFAULT_LEVELS)]
    schedule = [(lv, None if r is None else to_rational(r)) for lv, r in schedule]
    _check_schedule(schedule)
    rows = []
    compact = False
    for level, r in schedule:
        space = catalog_family(family, params, level, cap=cap)
        compact = space.is_compact
        if r is None:
            r = default_radius(space)
        rows.append((level, r, escaping_components(space, r)))
    if compact:
        return EndsEstimate(family, tuple(rows), window, "compact", 0)
    tail = [c for _, _, c in rows[-window:]]
    if len(tail) < window:
        verdict, k = "inconclusive", None
    elif len(set(tail)) == 1 and tail[0] > 0:
        verdict, k = "finite", tail[0]
    elif all(a < b for a, b in zip(tail, tail[1:])):
        verdict, k = "unbounded", None
    else:
        verdict, k = "inconclusive", None
    return EndsEstimate(family, tuple(rows), window, verdict, k)


@dataclass(frozen=True)
class JSpaceVerdict:
    value: bool | None   # None when the ends estimate is inconclusive
    rationale: str
    ends: EndsEstimate

    def __bool__(self):
        return bool(self.value)

    def to_json(self):
        return {"j_space": self.value, "rationale": self.rationale, "ends": self.ends.to_json()}


def is_j_space(family, params=None, schedule=None, window=DEFAULT_WINDOW, levels=None) -> JSpaceVerdict:
    """One end on a non-compact space, read through the end count.

    For locally compact non-compact spaces this is the J-space property;
    the closed-cover definition itself is not tested.
    """
    est = count_ends(family, params, schedule, window=window, levels=levels)
    if est.verdict == "compact":
        return JSpaceVerdict(False, "compact", est)
    if est.verdict == "inconclusive":
        return JSpaceVerdict(None, "inconclusive end count", est)
    if est.one_ended:
        return JSpaceVerdict(True, "non-compact with exactly one end", est)
    return JSpaceVerdict(False, f"{est.describe()} ends", est)


def ends_of_space(space: NetworkSpace, levels=None, window=DEFAULT_WINDOW) -> EndsEstimate:
    """End count of the family a network window belongs to.

    Custom networks are finite graphs, hence compact.
    """
    if space.family == "custom":
        r = default_radius(space)
        return EndsEstimate("custom", ((space.level, r, escaping_components(space, r)),), window,
                            "compact", 0)
    return count_ends(space.family, space.params, levels=levels, window=window)
