"""Isometry groups and the dynamics of their action.

Finite presentations get their full isometry group by backtracking search.
Catalog networks get a registered symbolic group instead: a product over
pieces of per-family factors (lattice translations extended by a finite
point group, dihedral groups of cycles), plus swaps of identical pieces.

An action by isometries is proper iff every limit set is empty.  On these
discrete windows that happens iff every point stabilizer is finite: orbits
are discrete, so a convergent sequence g_k x is eventually constant, and
g_k can only leave every compact set of G if the transporter it lives in
is infinite.
"""
from __future__ import annotations

import itertools
import math
import os
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .catalog import catalog_family
from .compactness import rho as compute_rho
from .components import NON_COMPACT, ComponentPartition, pseudo_components
from .errors import BoundExceededError, NoSymmetryModelError
from .serialize import point_json
from .spaces import MetricSpace, NetworkSpace

DEFAULT_MAX_N = 16


def max_points() -> int:
    return int(os.environ.get("ENDSCOPE_MAX_N", DEFAULT_MAX_N))


# finite presentations ------------------------------------------------------

@dataclass(frozen=True)
class FiniteIsometry:
    """A permutation of the points of a finite space, stored as index images."""
    images: tuple
    points: tuple = field(compare=False, repr=False)

    def __call__(self, x):
        return self.points[self.images[self.points.index(x)]]

    def compose(self, other: "FiniteIsometry") -> "FiniteIsometry":
        """self after other."""
        return FiniteIsometry(tuple(self.images[j] for j in other.images), self.points)

    def inverse(self) -> "FiniteIsometry":
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return FiniteIsometry(tuple(inv), self.points)

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def to_json(self):
        return [[point_json(self.points[i]), point_json(self.points[j])] for i, j in enumerate(self.images)]


def _scaled_rows(space: MetricSpace):
    vals = [v for row in space.matrix.rows for v in row]
    scale = math.lcm(*(v.denominator for v in vals)) if vals else 1
    return [[int(v * scale) for v in row] for row in space.matrix.rows]


def _point_keys(space: MetricSpace, D):
    r = compute_rho(space)
    delta = {s.point: s.delta for s in space.sites}
    return [(tuple(sorted(D[i])), r[p], delta.get(p)) for i, p in enumerate(space.points)]


def isometry_group_finite(space: MetricSpace, bound=None, verify=True) -> list[FiniteIsometry]:
    """All permutations preserving d, rho and the cluster sites.

    Backtracking assigns images point by point; a candidate image must share
    the sorted distance row, the rho value and the site gap, and agree on
    distances to every point assigned so far.
    """
    bound = max_points() if bound is None else bound
    n = len(space)
    if n > bound:
        raise BoundExceededError(f"{n} points exceeds the enumeration bound {bound} (ENDSCOPE_MAX_N)")
    D = _scaled_rows(space)
    keys = _point_keys(space, D)
    cands = [[j for j in range(n) if keys[j] == keys[i]] for i in range(n)]
    order = sorted(range(n), key=lambda i: len(cands[i]))
    image = [None] * n
    used = [False] * n
    found = []

    def extend(depth):
        if depth == n:
            found.append(tuple(image))
            return
        i = order[depth]
        for j in cands[i]:
            if used[j]:
                continue
            if all(D[i][k] == D[j][image[k]] for k in order[:depth]):
                image[i] = j
                used[j] = True
                extend(depth + 1)
                used[j] = False
        image[i] = None

    extend(0)
    group = [FiniteIsometry(imgs, space.points) for imgs in sorted(found)]
    if verify:
        _verify_group(group)
    return group


def _verify_group(group):
    elems = set(group)
    if not any(g.is_identity() for g in group):
        raise AssertionError("enumerated set lacks the identity")
    sample = group if len(group) <= 64 else random.Random(0).sample(group, 64)
    for g in group:
        if g.inverse() not in elems:
            raise AssertionError("enumerated set is not closed under inverses")
        for h in sample:
            if g.compose(h) not in elems:
                raise AssertionError("enumerated set is not closed under composition")


# symbolic factors ----------------------------------------------------------

class Factor:
    """Isometry group of one catalog piece, acting on its vertex ids."""
    name = "factor"
    rank = 0            # rank of the translation lattice
    point_order = 1     # order of the finite part (stabilizer of a vertex is at most this)

    @property
    def order(self):
        return None if self.rank else self.point_order

    def describe(self):
        return {"factor": self.name, "translation_rank": self.rank, "point_group_order": self.point_order,
                "order": self.order}


class TrivialFactor(Factor):
    name = "trivial"
    identity = ()

    def apply(self, e, v):
        return v

    def compose(self, a, b):
        return ()

    def inverse(self, a):
        return ()

    def generators(self):
        return []

    def transporter(self, x, y):
        return [()] if x == y else []

    def elements(self):
        return [()]

    def to_json(self, e):
        return {}


class LineFactor(Factor):
    """x -> s*x + t."""
    name = "Z x| Z/2"
    rank = 1
    point_order = 2
    identity = (1, 0)

    def apply(self, e, v):
        s, t = e
        return s * v + t

    def compose(self, a, b):
        return (a[0] * b[0], a[0] * b[1] + a[1])

    def inverse(self, a):
        return (a[0], -a[0] * a[1])

    def generators(self):
        return [(1, 1), (-1, 0)]

    def translation(self, step):
        return (1, step[0])

    def transporter(self, x, y):
        return [(1, y - x), (-1, y + x)]

    def to_json(self, e):
        return {"sign": e[0], "shift": e[1]}


class LadderFactor(Factor):
    """(i, r) -> (s*i + t, r xor f)."""
    name = "(Z x| Z/2) x Z/2"
    rank = 1
    point_order = 4
    identity = (1, 0, 0)

    def apply(self, e, v):
        s, t, f = e
        return (s * v[0] + t, v[1] ^ f)

    def compose(self, a, b):
        return (a[0] * b[0], a[0] * b[1] + a[1], a[2] ^ b[2])

    def inverse(self, a):
        return (a[0], -a[0] * a[1], a[2])

    def generators(self):
        return [(1, 1, 0), (-1, 0, 0), (1, 0, 1)]

    def translation(self, step):
        return (1, step[0], 0)

    def transporter(self, x, y):
        f = x[1] ^ y[1]
        return [(1, y[0] - x[0], f), (-1, y[0] + x[0], f)]

    def to_json(self, e):
        return {"sign": e[0], "shift": e[1], "flip": e[2]}


def _signed_perms():
    out = []
    for swap in (False, True):
        for sx in (1, -1):
            for sy in (1, -1):
                out.append(((0, sx), (sy, 0)) if swap else ((sx, 0), (0, sy)))
    return out


def _matmul(a, b):
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(2)) for j in range(2)) for i in range(2))


def _matvec(a, v):
    return (a[0][0] * v[0] + a[0][1] * v[1], a[1][0] * v[0] + a[1][1] * v[1])


def _transpose(a):
    return ((a[0][0], a[1][0]), (a[0][1], a[1][1]))


class GridFactor(Factor):
    """v -> M v + t with M one of the 8 signed permutation matrices."""
    name = "Z^2 x| D4"
    rank = 2
    point_order = 8
    identity = (((1, 0), (0, 1)), (0, 0))
    MATRICES = _signed_perms()

    def apply(self, e, v):
        M, t = e
        w = _matvec(M, v)
        return (w[0] + t[0], w[1] + t[1])

    def compose(self, a, b):
        Mb = _matvec(a[0], b[1])
        return (_matmul(a[0], b[0]), (Mb[0] + a[1][0], Mb[1] + a[1][1]))

    def inverse(self, a):
        Mt = _transpose(a[0])
        t = _matvec(Mt, a[1])
        return (Mt, (-t[0], -t[1]))

    def generators(self):
        return [(self.identity[0], (1, 0)), (self.identity[0], (0, 1)),
                (((0, -1), (1, 0)), (0, 0)), (((1, 0), (0, -1)), (0, 0))]

    def translation(self, step):
        return (self.identity[0], (step[0], step[1]))

    def transporter(self, x, y):
        out = []
        for M in self.MATRICES:
            Mx = _matvec(M, x)
            out.append((M, (y[0] - Mx[0], y[1] - Mx[1])))
        return out

    def to_json(self, e):
        return {"matrix": [list(r) for r in e[0]], "shift": list(e[1])}


class CycleFactor(Factor):
    """k -> s*k + r (mod m): the dihedral group of order 2m."""
    name = "dihedral"

    def __init__(self, m):
        self.m = m
        self.point_order = 2 * m
        self.identity = (1, 0)

    def apply(self, e, v):
        return (e[0] * v + e[1]) % self.m

    def compose(self, a, b):
        return (a[0] * b[0], (a[0] * b[1] + a[1]) % self.m)

    def inverse(self, a):
        return (a[0], (-a[0] * a[1]) % self.m)

    def generators(self):
        return [(1, 1), (-1, 0)]

    def elements(self):
        return [(s, r) for s in (1, -1) for r in range(self.m)]

    def transporter(self, x, y):
        return [(1, (y - x) % self.m), (-1, (y + x) % self.m)]

    def describe(self):
        d = super().describe()
        d["m"] = self.m
        return d

    def to_json(self, e):
        return {"sign": e[0], "rotation": e[1]}


def _factor_for(piece):
    p = dict(piece.params)
    if piece.family == "ray":
        return TrivialFactor()
    if piece.family == "line":
        return LineFactor()
    if piece.family == "ladder":
        return LadderFactor()
    if piece.family == "grid":
        return GridFactor()
    if piece.family == "cycle":
        return CycleFactor(p["m"])
    raise NoSymmetryModelError(f"no registered symmetry model for family {piece.family!r}")


# symbolic groups -----------------------------------------------------------

@dataclass(frozen=True)
class SymbolicIsometry:
    """Piece permutation plus one factor element per source piece.

    A vertex in piece i goes to piece ``perm[i]`` through ``parts[i]``.
    """
    perm: tuple
    parts: tuple
    group: "SymbolicIsometryGroup" = field(compare=False, repr=False)

    def __call__(self, v):
        g = self.group
        if not g.tagged:
            return g.factors[0].apply(self.parts[0], v)
        i, local = v
        return (self.perm[i], g.factors[i].apply(self.parts[i], local))

    def compose(self, other: "SymbolicIsometry") -> "SymbolicIsometry":
        """self after other."""
        g = self.group
        perm = tuple(self.perm[other.perm[i]] for i in range(len(self.perm)))
        parts = tuple(g.factors[i].compose(self.parts[other.perm[i]], other.parts[i])
                      for i in range(len(self.perm)))
        return SymbolicIsometry(perm, parts, g)

    def inverse(self) -> "SymbolicIsometry":
        g = self.group
        n = len(self.perm)
        perm = [0] * n
        parts = [None] * n
        for i, j in enumerate(self.perm):
            perm[j] = i
            parts[j] = g.factors[i].inverse(self.parts[i])
        return SymbolicIsometry(tuple(perm), tuple(parts), g)

    def to_json(self):
        g = self.group
        return {"perm": list(self.perm), "parts": [g.factors[i].to_json(e) for i, e in enumerate(self.parts)]}


class SymbolicIsometryGroup:
    """Registered isometry group of a catalog network space."""

    def __init__(self, space: NetworkSpace):
        if space.cap is not None:
            for piece in space.pieces:
                if piece.weight is None or piece.weight >= space.cap:
                    raise NoSymmetryModelError(
                        "symmetry model needs every edge weight below the cap; otherwise the "
                        "capped metric can have extra isometries")
        self.space = space
        self.family = space.family
        self.tagged = space.tagged
        self.factors = tuple(_factor_for(p) for p in space.pieces)
        classes: dict = {}
        for i, p in enumerate(space.pieces):
            classes.setdefault(p.key, []).append(i)
        self.swap_classes = tuple(tuple(c) for c in classes.values())

    @property
    def identity(self) -> SymbolicIsometry:
        n = len(self.factors)
        return SymbolicIsometry(tuple(range(n)), tuple(f.identity for f in self.factors), self)

    def element(self, parts=None, perm=None) -> SymbolicIsometry:
        n = len(self.factors)
        perm = tuple(range(n)) if perm is None else tuple(perm)
        parts = tuple(f.identity for f in self.factors) if parts is None else tuple(parts)
        return SymbolicIsometry(perm, parts, self)

    def embed(self, piece: int, e) -> SymbolicIsometry:
        parts = [f.identity for f in self.factors]
        parts[piece] = e
        return self.element(parts)

    def translation(self, piece: int, step) -> SymbolicIsometry:
        return self.embed(piece, self.factors[piece].translation(tuple(step)))

    def swap(self, i, j) -> SymbolicIsometry:
        perm = list(range(len(self.factors)))
        perm[i], perm[j] = j, i
        return self.element(perm=perm)

    def generators(self) -> list[SymbolicIsometry]:
        out = [self.embed(i, e) for i, f in enumerate(self.factors) for e in f.generators()]
        for cls in self.swap_classes:
            out += [self.swap(a, b) for a, b in zip(cls, cls[1:])]
        return out

    @property
    def order(self):
        if any(f.order is None for f in self.factors):
            return None
        total = math.prod(f.order for f in self.factors)
        return total * math.prod(math.factorial(len(c)) for c in self.swap_classes)

    @property
    def translation_rank(self) -> int:
        return sum(f.rank for f in self.factors)

    def _piece_perms(self):
        n = len(self.factors)
        per_class = [list(itertools.permutations(c)) for c in self.swap_classes]
        for choice in itertools.product(*per_class):
            perm = list(range(n))
            for cls, img in zip(self.swap_classes, choice):
                for a, b in zip(cls, img):
                    perm[a] = b
            yield tuple(perm)

    def elements(self) -> list[SymbolicIsometry]:
        """Every element; only for finite groups."""
        if self.order is None:
            raise ValueError("group is infinite")
        per_piece = [f.elements() for f in self.factors]
        return [self.element(parts, perm) for perm in self._piece_perms()
                for parts in itertools.product(*per_piece)]

    def _split(self, v):
        return (v[0], v[1]) if self.tagged else (0, v)

    def stabilizer_is_infinite(self, x) -> bool:
        i, _ = self._split(x)
        return any(f.rank > 0 for j, f in enumerate(self.factors) if j != i)

    def transporter(self, x, y) -> "TransporterQuery":
        i, xl = self._split(x)
        j, yl = self._split(y)
        fixed = []
        for perm in self._piece_perms():
            if perm[i] != j:
                continue
            for e in self.factors[i].transporter(xl, yl):
                parts = [f.identity for f in self.factors]
                parts[i] = e
                fixed.append(self.element(parts, perm))
        free = tuple(k for k in range(len(self.factors)) if k != i) if fixed else ()
        infinite = bool(fixed) and any(self.factors[k].rank > 0 for k in free)
        return TransporterQuery(x, y, tuple(fixed), free, infinite)

    def describe(self):
        return {"family": self.family, "order": self.order, "translation_rank": self.translation_rank,
                "factors": [dict(f.describe(), piece=i, piece_family=self.space.pieces[i].family)
                            for i, f in enumerate(self.factors)],
                "swap_classes": [list(c) for c in self.swap_classes if len(c) > 1]}

    def to_json(self):
        return self.describe()


def symbolic_group(space: NetworkSpace) -> SymbolicIsometryGroup:
    return SymbolicIsometryGroup(space)


# dynamics ------------------------------------------------------------------

@dataclass(frozen=True)
class TransporterQuery:
    """Elements g with g(source) = target.

    ``elements`` lists the constrained part; for symbolic groups each listed
    element may be further composed with anything acting on ``free_pieces``
    only, and ``infinite`` says whether that makes the set infinite.
    """
    source: object
    target: object
    elements: tuple
    free_pieces: tuple = ()
    infinite: bool = False

    def __len__(self):
        if self.infinite:
            raise ValueError("transporter is infinite")
        return len(self.elements)

    @property
    def empty(self) -> bool:
        return not self.elements

    def to_json(self):
        return {"source": point_json(self.source), "target": point_json(self.target),
                "infinite": self.infinite, "free_pieces": list(self.free_pieces),
                "elements": [e.to_json() for e in self.elements]}


def transporter(group, x, y) -> TransporterQuery:
    if isinstance(group, SymbolicIsometryGroup):
        return group.transporter(x, y)
    return TransporterQuery(x, y, tuple(g for g in group if g(x) == y))


@dataclass(frozen=True)
class TranslationFamily:
    """{ T(sum k_i * steps[i]) o base : k in Z^len(steps) } inside one piece's lattice."""
    base: SymbolicIsometry
    piece: int
    steps: tuple

    @property
    def infinite(self) -> bool:
        return any(any(c != 0 for c in s) for s in self.steps)

    def member(self, ks) -> SymbolicIsometry:
        g = self.base.group
        rank = g.factors[self.piece].rank
        vec = [0] * rank
        for k, s in zip(ks, self.steps):
            for a in range(rank):
                vec[a] += k * s[a]
        return g.translation(self.piece, vec).compose(self.base)

    def sample(self, K) -> list[SymbolicIsometry]:
        rng = range(-K, K + 1)
        return [self.member(ks) for ks in itertools.product(rng, repeat=len(self.steps))]

    def orbit_is_finite(self, z) -> bool:
        w = self.base(z)
        piece = self.base.group._split(w)[0]
        return piece != self.piece or not self.infinite

    def to_json(self):
        return {"base": self.base.to_json(), "piece": self.piece, "steps": [list(s) for s in self.steps]}


@dataclass(frozen=True)
class SymbolicSubset:
    """A subset F of a symbolic group: finitely many elements plus translation families."""
    elements: tuple = ()
    families: tuple = ()

    def orbit_is_finite(self, z) -> bool:
        return all(f.orbit_is_finite(z) for f in self.families)

    def orbit_sample(self, z, K=3) -> set:
        out = {g(z) for g in self.elements}
        for f in self.families:
            out |= {g(z) for g in f.sample(K)}
        return out

    def to_json(self):
        return {"elements": [e.to_json() for e in self.elements],
                "families": [f.to_json() for f in self.families]}


def factor_subset(group: SymbolicIsometryGroup, piece: int, translations_only=False) -> SymbolicSubset:
    """The whole factor of ``piece`` (or its translation subgroup) as a subset."""
    f = group.factors[piece]
    if f.rank == 0:
        if translations_only:
            return SymbolicSubset((group.identity,))
        if isinstance(f, CycleFactor):
            return SymbolicSubset(tuple(group.embed(piece, e) for e in f.elements()))
        return SymbolicSubset((group.identity,))
    steps = tuple(tuple(1 if a == b else 0 for b in range(f.rank)) for a in range(f.rank))
    if translations_only:
        return SymbolicSubset(families=(TranslationFamily(group.identity, piece, steps),))
    point = [e for e in f.transporter(_origin(f), _origin(f))]
    return SymbolicSubset(families=tuple(TranslationFamily(group.embed(piece, e), piece, steps) for e in point))


def _origin(f):
    return {1: 0, 2: (0, 0)}[f.rank] if not isinstance(f, LadderFactor) else (0, 0)


@dataclass(frozen=True)
class PrecompactResult:
    value: bool
    witness: object = None

    def __bool__(self):
        return self.value

    def to_json(self):
        return {"precompact": self.value, "witness": point_json(self.witness)}


def _orbit_finite(F, z) -> bool:
    if isinstance(F, SymbolicSubset):
        return F.orbit_is_finite(z)
    return True  # a finite set of isometries has finite orbits


def is_precompact(F, space) -> PrecompactResult:
    """F has compact closure in G iff every orbit F*z is finite (discrete windows)."""
    for z in space.points:
        if not _orbit_finite(F, z):
            return PrecompactResult(False, z)
    return PrecompactResult(True)


@dataclass(frozen=True)
class KSet:
    """K(F) with its clopen certificate against the pseudo-component partition."""
    points: frozenset
    classes: tuple       # indices of classes met by K(F)
    is_union: bool       # K(F) equals the union of the classes it meets
    saturated: bool      # x in K(F) implies C_x inside K(F)

    @property
    def certified(self) -> bool:
        return self.is_union and self.saturated

    def to_json(self):
        return {"size": len(self.points), "classes": list(self.classes), "is_union_of_classes": self.is_union,
                "saturated": self.saturated}


def k_of_f(F, space, partition: ComponentPartition | None = None) -> KSet:
    """Points whose F-orbit has compact closure, certified clopen."""
    if partition is None:
        partition = pseudo_components(space)
    pts = frozenset(z for z in space.points if _orbit_finite(F, z))
    met = sorted({partition.class_index(z) for z in pts})
    union = frozenset().union(*(partition.classes[i] for i in met)) if met else frozenset()
    saturated = all(partition.class_of(z) <= pts for z in pts)
    return KSet(pts, tuple(met), union == pts, saturated)


@dataclass(frozen=True)
class LimitWitness:
    """A sequence g_k -> infinity with g_k(point) = target for every k.

    ``divergence_point`` has pairwise distinct images under the g_k, so no
    subsequence converges in G.
    """
    point: object
    target: object
    family: TranslationFamily
    divergence_point: object
    level: int

    def element(self, k) -> SymbolicIsometry:
        return self.family.member((k,))

    def replay(self, K=8, check_distances=True) -> bool:
        images = set()
        for k in range(1, K + 1):
            g = self.element(k)
            if g(self.point) != self.target:
                return False
            images.add(g(self.divergence_point))
        if len(images) != K:
            return False
        if check_distances:
            space = self.family.base.group.space
            return all(preserves_distances(self.element(k), space) for k in (1, K))
        return True

    def to_json(self):
        return {"kind": "translation_family", "point": point_json(self.point),
                "target": point_json(self.target), "piece": self.family.piece,
                "step": list(self.family.steps[0]), "k_range": "1..",
                "divergence_point": point_json(self.divergence_point), "level": self.level,
                "program": [self.element(k).to_json() for k in (1, 2, 3)]}


def limit_set_witness(group, space, x) -> LimitWitness | None:
    """A concrete point of the limit set L(x), or None when L(x) is empty."""
    if not isinstance(group, SymbolicIsometryGroup):
        return None  # finite groups are compact
    if not group.stabilizer_is_infinite(x):
        return None
    i = group._split(x)[0]
    j = next(k for k, f in enumerate(group.factors) if k != i and f.rank > 0)
    step = tuple(1 if a == 0 else 0 for a in range(group.factors[j].rank))
    fam = TranslationFamily(group.identity, j, (step,))
    return LimitWitness(x, x, fam, space.pieces[j].anchor, space.level)


def preserves_distances(g, space: NetworkSpace, sources=6) -> bool:
    """Exact check that ``g`` preserves capped distances on the window.

    Images may leave the window, so distances are read in a deeper level of
    the same catalog family.
    """
    pts = list(space.points)
    images = {v: g(v) for v in pts}
    deep = _space_containing(space, images.values())
    srcs = [space.pieces[i].anchor for i in range(len(space.pieces))]
    srcs += random.Random(len(pts)).sample(pts, min(sources, len(pts)))
    for a in srcs:
        da = space.distances_from(a)
        dga = deep.distances_from(images[a])
        for b in pts:
            if da[b] != dga[images[b]]:
                return False
    return True


def _space_containing(space: NetworkSpace, points):
    points = list(points)
    level = space.level
    for _ in range(256):
        deep = catalog_family(space.family, space.params, level, cap=space.cap)
        if all(p in deep for p in points):
            return deep
        level += 1
    raise ValueError("images do not fit in any level up to +256")


@dataclass
class PropernessReport:
    applicable: bool
    verdicts: list = field(default_factory=list)
    red_flags: list = field(default_factory=list)
    reason: str = ""

    @property
    def status(self):
        if not self.applicable:
            return "inapplicable"
        return "red-flag" if self.red_flags else "pass"

    def verdict_for(self, class_index):
        return self.verdicts[class_index]

    def to_json(self):
        return {"status": self.status, "reason": self.reason, "red_flags": list(self.red_flags),
                "classes": [{"class": v["class"], "tag": v["tag"], "proper": v["proper"],
                             "witness": None if v["witness"] is None else v["witness"].to_json()}
                            for v in self.verdicts]}


def properness_report(group, space, partition: ComponentPartition | None = None, ends=None,
                      levels=None, window=4) -> PropernessReport:
    """Per pseudo-component: proper, or non-proper with a limit-set witness.

    Network spaces must be one-ended (else inapplicable).  A non-compact
    class that is not proper is a red flag.
    """
    if isinstance(space, NetworkSpace):
        if ends is None:
            from .ends import ends_of_space
            ends = ends_of_space(space, levels=levels, window=window)
        if not ends.one_ended:
            return PropernessReport(False, reason=f"hypothesis not met: ends verdict {ends.describe()}")
    if partition is None:
        partition = pseudo_components(space)
    report = PropernessReport(True)
    order = {p: i for i, p in enumerate(space.points)}
    for ci, (cls, tag) in enumerate(zip(partition.classes, partition.tags)):
        witness = None
        for z in sorted(cls, key=order.__getitem__):
            witness = limit_set_witness(group, space, z)
            if witness is not None:
                break
        report.verdicts.append({"class": ci, "tag": tag, "proper": witness is None, "witness": witness})
        if tag == NON_COMPACT and witness is not None:
            report.red_flags.append(f"non-compact class {ci} is not proper")
    return report


def group_for(space):
    """Enumerated group for finite presentations, symbolic group for catalog networks."""
    if isinstance(space, NetworkSpace):
        if space.family == "custom":
            from .spaces import as_metric_space
            return isometry_group_finite(as_metric_space(space))
        return symbolic_group(space)
    return isometry_group_finite(space)


def random_subset(group: SymbolicIsometryGroup, rng: random.Random, max_elements=3) -> SymbolicSubset:
    """A random symbolic subset mixing explicit elements and translation families."""
    def random_element():
        parts = []
        for f in group.factors:
            if isinstance(f, CycleFactor):
                parts.append((rng.choice((1, -1)), rng.randrange(f.m)))
            elif f.rank:
                origin = _origin(f)
                e = rng.choice(f.transporter(origin, origin))
                shift = f.translation(tuple(rng.randint(-3, 3) for _ in range(f.rank)))
                parts.append(f.compose(shift, e))
            else:
                parts.append(f.identity)
        perm = rng.choice(list(group._piece_perms()))
        return group.element(parts, perm)

    elements = tuple(random_element() for _ in range(rng.randint(0, max_elements)))
    fams = []
    lattice = [i for i, f in enumerate(group.factors) if f.rank]
    for _ in range(rng.randint(0, 2)):
        if not lattice:
            break
        piece = rng.choice(lattice)
        rank = group.factors[piece].rank
        nsteps = rng.randint(1, rank)
        steps = tuple(tuple(rng.randint(-2, 2) for _ in range(rank)) for _ in range(nsteps))
        fams.append(TranslationFamily(random_element(), piece, steps))
    return SymbolicSubset(elements, tuple(fams))


__all__ = [
    "FiniteIsometry", "isometry_group_finite", "SymbolicIsometry", "SymbolicIsometryGroup", "symbolic_group",
    "TransporterQuery", "transporter", "TranslationFamily", "SymbolicSubset", "factor_subset", "is_precompact",
    "k_of_f", "KSet", "LimitWitness", "limit_set_witness", "properness_report", "PropernessReport",
    "preserves_distances", "group_for", "random_subset",
]
