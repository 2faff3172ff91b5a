"""A one-ended space with a compact piece whose isotropy is not compact.

A grid window and a 12-cycle, both with edges of length 1/10, glued by the
cap 1.  The grid is the only non-compact pseudo-component.  Translating the
grid fixes every cycle vertex, so the stabilizer of a cycle vertex is
infinite: the action is proper on the grid class only.
Run: python3 demos/04_grid_and_cycle.py
"""
from fractions import Fraction

from endscope.catalog import paper_example
from endscope.components import pseudo_components, theorem1_check
from endscope.ends import count_ends
from endscope.isometry import k_of_f, factor_subset, properness_report, symbolic_group
from endscope.metric import format_rational

space = paper_example(12, 5, Fraction(1, 10))
print(f"{len(space)} vertices, cap {format_rational(space.cap)}")

ends = count_ends("paper_example", {"m": 12, "w": "1/10"})
print("ends:", ends.describe())

part = pseudo_components(space)
for i, (cls, tag) in enumerate(zip(part.classes, part.tags)):
    print(f"class {i}: {len(cls)} vertices, {tag}")

rep = theorem1_check(space, ends=ends, partition=part)
print("structure check:", rep.status, "| compact remainder:", rep.compact_remainder)

group = symbolic_group(space)
print("group factors:", [f.name for f in group.factors])
proper = properness_report(group, space, part, ends=ends)
for v in proper.verdicts:
    w = v["witness"]
    line = f"class {v['class']}: proper={v['proper']}"
    if w is not None:
        imgs = [w.element(k)(w.divergence_point) for k in (1, 2, 3)]
        line += f"; g_k fixes {w.point}, moves {w.divergence_point} to {imgs}; replay={w.replay()}"
    print(line)

# orbits under grid translations are finite exactly on the cycle
k = k_of_f(factor_subset(group, 0, translations_only=True), space, part)
print("K(grid translations):", len(k.points), "vertices, certified", k.certified)
