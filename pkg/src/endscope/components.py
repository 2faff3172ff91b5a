"""Pseudo-components.

The proximity digraph has an arc x -> y iff d(x, y) < rho(x).  Two points are
equivalent iff they are equal or reach each other along arcs; the classes
(pseudo-components) are therefore the strongly connected components of the
digraph.

On a network space the nodes are whole graph components rather than
vertices.  A pseudo-component is clopen and a connected component of the
1-complex is connected, so it never splits across pseudo-components; only
merging between graph components has to be decided, and that is done by the
arc test on anchors with the capped distance.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .compactness import RhoFunction, rho as compute_rho
from .metric import INF, format_rational
from .serialize import point_json, point_label
from .spaces import MetricSpace, NetworkSpace

COMPACT = "compact"
NON_COMPACT = "non-compact"


@dataclass(frozen=True)
class ProximityDigraph:
    nodes: tuple
    succ: dict  # node -> frozenset of successors, no self-arcs

    def arcs(self) -> list:
        pos = {v: i for i, v in enumerate(self.nodes)}
        return [(u, v) for u in self.nodes for v in sorted(self.succ[u], key=pos.__getitem__)]

    def has_arc(self, u, v) -> bool:
        return v in self.succ[u]

    def __len__(self):
        return len(self.nodes)


def _node_view(space):
    """(nodes, representative point per node) for either presentation."""
    if isinstance(space, NetworkSpace):
        nodes = tuple(range(len(space.pieces)))
        return nodes, {i: space.pieces[i].anchor for i in nodes}
    return tuple(space.points), {p: p for p in space.points}


def proximity_digraph(space, rho: RhoFunction | None = None) -> ProximityDigraph:
    """Arcs x -> y exactly when d(x, y) < rho(x), compared exactly."""
    if rho is None:
        rho = compute_rho(space)
    nodes, rep = _node_view(space)
    succ = {}
    for u in nodes:
        ru = rho[rep[u]]
        if ru == INF:
            succ[u] = frozenset(v for v in nodes if v != u)
            continue
        d = space.distances_from(rep[u])
        succ[u] = frozenset(v for v in nodes if v != u and d[rep[v]] < ru)
    return ProximityDigraph(nodes, succ)


def transitive_closure(g: ProximityDigraph) -> ProximityDigraph:
    """Warshall's algorithm on integer bit rows.

    The closure may contain self-arcs (x on a cycle); they are dropped to
    keep the no-self-arc convention.
    """
    n = len(g.nodes)
    pos = {v: i for i, v in enumerate(g.nodes)}
    rows = [0] * n
    for u, vs in g.succ.items():
        bits = 0
        for v in vs:
            bits |= 1 << pos[v]
        rows[pos[u]] = bits
    for k in range(n):
        kbit = 1 << k
        rk = rows[k]
        for i in range(n):
            if rows[i] & kbit:
                rows[i] |= rk
    succ = {}
    for i, u in enumerate(g.nodes):
        bits = rows[i] & ~(1 << i)
        succ[u] = frozenset(g.nodes[j] for j in range(n) if bits >> j & 1)
    return ProximityDigraph(g.nodes, succ)


def strongly_connected_components(nodes, succ) -> list[list]:
    """Tarjan's algorithm, iterative; components come out in reverse topological order."""
    index = {}
    low = {}
    on_stack = set()
    stack = []
    out = []
    counter = 0
    for root in nodes:
        if root in index:
            continue
        work = [(root, iter(succ[root]))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(succ[w])))
                    advanced = True
                    break
                if w in on_stack and index[w] < low[v]:
                    low[v] = index[w]
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                if low[v] < low[parent]:
                    low[parent] = low[v]
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                out.append(comp)
    return out


def classes_by_definition(g: ProximityDigraph) -> list[frozenset]:
    """Classes of x ~ y iff x = y or (x R* y and y R* x), read off the closure."""
    closure = transitive_closure(g)
    seen = set()
    classes = []
    for x in g.nodes:
        if x in seen:
            continue
        cls = frozenset([x]) | frozenset(y for y in closure.succ[x] if x in closure.succ[y])
        seen |= cls
        classes.append(cls)
    return classes


@dataclass(frozen=True)
class ComponentPartition:
    """Pseudo-components with compactness tags.

    ``classes`` are point sets (vertices for a network space);
    ``node_classes`` are the same classes over digraph nodes.
    """
    space: object
    digraph: ProximityDigraph
    rho: RhoFunction
    node_classes: tuple
    classes: tuple
    tags: tuple
    _node_class: dict = field(repr=False, compare=False)

    def __len__(self):
        return len(self.classes)

    def node_of(self, x):
        if isinstance(self.space, NetworkSpace):
            return self.space.piece_of(x)
        return x

    def class_index(self, x) -> int:
        """Class of ``x``; for catalog networks also defined off-window."""
        try:
            return self._node_class[self.node_of(x)]
        except KeyError:
            raise KeyError(f"unknown point id {x!r}") from None

    def class_of(self, x) -> frozenset:
        return self.classes[self.class_index(x)]

    def non_compact(self) -> list[int]:
        return [i for i, t in enumerate(self.tags) if t == NON_COMPACT]

    def compact_remainder(self) -> frozenset:
        return frozenset().union(*(c for c, t in zip(self.classes, self.tags) if t == COMPACT))

    def as_sets(self) -> set:
        return set(self.classes)

    def to_json(self):
        order = {p: i for i, p in enumerate(self.space.points)}
        return {"count": len(self.classes),
                "classes": [{"tag": t, "size": len(c),
                             "points": [point_json(p) for p in sorted(c, key=order.__getitem__)]}
                            for c, t in zip(self.classes, self.tags)]}


def _tag(space, node_class) -> str:
    if isinstance(space, NetworkSpace):
        infinite = any(space.pieces[i].infinite for i in node_class)
    else:
        infinite = any(p in space.site_points for p in node_class)
    return NON_COMPACT if infinite else COMPACT


def pseudo_components(space, rho: RhoFunction | None = None) -> ComponentPartition:
    """Partition ``space`` into pseudo-components via one SCC pass."""
    if rho is None:
        rho = compute_rho(space)
    g = proximity_digraph(space, rho)
    pos = {v: i for i, v in enumerate(g.nodes)}
    comps = [frozenset(c) for c in strongly_connected_components(g.nodes, g.succ)]
    comps.sort(key=lambda c: min(pos[v] for v in c))
    if isinstance(space, NetworkSpace):
        classes = tuple(frozenset().union(*(space.pieces[i].vertices for i in c)) for c in comps)
    else:
        classes = tuple(comps)
    node_class = {v: i for i, c in enumerate(comps) for v in c}
    tags = tuple(_tag(space, c) for c in comps)
    return ComponentPartition(space, g, rho, tuple(comps), classes, tags, node_class)


@dataclass
class StructureReport:
    """Outcome of checking the one-end structure theorem on a network window."""
    applicable: bool
    ends: object
    class_count: int | None = None
    non_compact_count: int | None = None
    compact_remainder: int | None = None
    red_flags: list = field(default_factory=list)
    reason: str = ""

    @property
    def passed(self) -> bool:
        return self.applicable and not self.red_flags

    @property
    def status(self) -> str:
        if not self.applicable:
            return "inapplicable"
        return "red-flag" if self.red_flags else "pass"

    def to_json(self):
        return {"status": self.status, "reason": self.reason, "ends": self.ends,
                "class_count": self.class_count, "non_compact_count": self.non_compact_count,
                "compact_remainder_vertices": self.compact_remainder, "red_flags": list(self.red_flags)}


def theorem1_check(space: NetworkSpace, ends=None, partition=None, levels=None, window=4) -> StructureReport:
    """Finitely many pseudo-components, exactly one non-compact, finite rest.

    Only applies when the family is certified one-ended; otherwise the
    report is ``inapplicable``.  Any failed assertion is a red flag: it
    would contradict the theorem, so it points at a model bug.
    """
    from .ends import count_ends

    if ends is None:
        ends = count_ends(space.family, space.params, levels=levels, window=window)
    if not ends.one_ended:
        return StructureReport(False, ends, reason=f"hypothesis not met: ends verdict {ends.describe()}")
    if partition is None:
        partition = pseudo_components(space)
    report = StructureReport(True, ends, class_count=len(partition))
    nc = partition.non_compact()
    report.non_compact_count = len(nc)
    if len(nc) != 1:
        report.red_flags.append(f"expected exactly one non-compact class, found {len(nc)}")
    rest = partition.compact_remainder()
    report.compact_remainder = len(rest)
    growing = rest & space.boundary
    if growing:
        report.red_flags.append(f"compact classes contain {len(growing)} boundary vertices")
    for i in range(len(partition)):
        if partition.tags[i] == COMPACT and any(space.pieces[j].infinite for j in partition.node_classes[i]):
            report.red_flags.append(f"class {i} tagged compact but contains a growing piece")
    return report


def to_dot(partition: ComponentPartition, name="proximity") -> str:
    """DOT text of the proximity digraph, one cluster per pseudo-component.

    Nodes carry rho, arcs carry d(x, y) and rho(x) so the strict inequality
    can be read off.
    """
    space = partition.space
    g = partition.digraph
    nodes, rep = _node_view(space)

    def label(u):
        if isinstance(space, NetworkSpace):
            piece = space.pieces[u]
            return f"{piece.family}#{u} ({len(piece.vertices)} v)"
        return point_label(u)

    ids = {u: f"n{i}" for i, u in enumerate(nodes)}
    lines = [f"digraph {name} {{", "  node [shape=ellipse];"]
    for ci, (nodes_c, tag) in enumerate(zip(partition.node_classes, partition.tags)):
        lines.append(f"  subgraph cluster_{ci} {{")
        lines.append(f'    label="C{ci} ({tag})";')
        for u in nodes:
            if u in nodes_c:
                r = format_rational(partition.rho[rep[u]])
                lines.append(f'    {ids[u]} [label="{label(u)}\\nrho={r}"];')
        lines.append("  }")
    for u, v in g.arcs():
        d = format_rational(space.distance(rep[u], rep[v]))
        r = format_rational(partition.rho[rep[u]])
        lines.append(f'  {ids[u]} -> {ids[v]} [label="d={d} < rho={r}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
