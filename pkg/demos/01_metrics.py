"""Finite metric spaces, the triangle check and the radius of compactness.

Run: python3 demos/01_metrics.py
"""
from endscope.compactness import rho
from endscope.errors import InvalidMetricError, LipschitzError
from endscope.metric import format_rational
from endscope.spaces import build_finite_space

# ten points on a line, unit spacing
n = 10
line = [[abs(i - j) for j in range(n)] for i in range(n)]

# with no sites every closed ball is compact, so rho is infinite everywhere
space = build_finite_space(range(n), line)
print("no sites:", [format_rational(rho(space)[i]) for i in range(n)])

# one site at 0 with gap 2: rho grows linearly away from it
space = build_finite_space(range(n), line, {"kind": "sites", "sites": [{"point": 0, "delta": 2}]})
print("site at 0:", [format_rational(rho(space)[i]) for i in range(n)])

# a gap wider than twice the nearest neighbour breaks the Lipschitz bound
try:
    build_finite_space(range(n), line, {"kind": "sites", "sites": [{"point": 0, "delta": 3}]})
except LipschitzError as e:
    print("rejected:", e)

# a broken triangle inequality is caught before anything else runs
try:
    build_finite_space("abc", [[0, 1, 3], [1, 0, 1], [3, 1, 0]])
except InvalidMetricError as e:
    print("rejected:", e.report.summary())
