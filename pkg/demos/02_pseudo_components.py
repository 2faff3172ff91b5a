"""Pseudo-components: strongly connected pieces of the proximity digraph.

x -> y whenever d(x, y) < rho(x).  Two points share a class when each
reaches the other.  Run: python3 demos/02_pseudo_components.py
"""
import random

from endscope.components import pseudo_components, to_dot
from endscope.metric import format_rational
from endscope.spaces import build_finite_space

# two clusters far apart, with a site inside the first one
pts = ["a0", "a1", "a2", "b0", "b1"]
d = [[0, 1, 1, 9, 9],
     [1, 0, 1, 9, 9],
     [1, 1, 0, 9, 9],
     [9, 9, 9, 0, 1],
     [9, 9, 9, 1, 0]]
space = build_finite_space(pts, d, {"kind": "sites", "sites": [{"point": "a0", "delta": 1}]})
part = pseudo_components(space)
for cls, tag in zip(part.classes, part.tags):
    print(sorted(cls), tag)
print()
print(to_dot(part))

# the relation is not symmetric: a far point can reach a near one without the converse
rng = random.Random(3)
for _ in range(3):
    n = 6
    xs = sorted(rng.sample(range(30), n))
    dd = [[abs(a - b) for b in xs] for a in xs]
    site = rng.randrange(n)
    gap = 2 * min(dd[site][j] for j in range(n) if j != site)
    sp = build_finite_space(range(n), dd, {"kind": "sites", "sites": [{"point": site, "delta": gap}]})
    p = pseudo_components(sp)
    print("positions", xs, "site", xs[site], "->", [sorted(xs[i] for i in c) for c in p.classes])
    print("  arcs:", [(xs[u], xs[v]) for u, v in p.digraph.arcs()][:8],
          "rho:", [format_rational(p.rho[i]) for i in range(n)])
