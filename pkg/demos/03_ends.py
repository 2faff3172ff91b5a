"""Counting ends of catalog graphs by growing windows.

At each level we drop a ball around the base vertex and count the leftover
components that still reach the growing boundary.  Run: python3 demos/03_ends.py
"""
from endscope.catalog import catalog_family
from endscope.ends import count_ends, escaping_components, is_j_space

for name, params in [("ray", {}), ("line", {}), ("ladder", {}), ("grid", {}), ("tree", {"k": 3}),
                     ("cycle", {"m": 12})]:
    est = count_ends(name, params)
    counts = [c for _, _, c in est.rows]
    print(f"{name:7s} counts {counts} -> {est.describe()}")

# the tree doubles at every radius
tree = catalog_family("tree", {"k": 3}, 8)
print("tree(3), level 8:", [escaping_components(tree, r) for r in range(6)])

# a cap changes the metric but not the end count
print("grid capped at 1/2:", count_ends("grid", {}, cap="1/2").describe())

for name in ("grid", "line"):
    v = is_j_space(name)
    print(f"{name} one-ended non-compact: {v.value} ({v.rationale})")
