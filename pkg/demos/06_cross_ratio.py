"""Closed-form solution by cross-ratios of z-values on the polygon vertices.

Renumbering vertices by time order makes the axes move like an hour hand; the
quadrilateral around the diagonal of Y(a,m,u) then has corners given by a
formula, and Y is their cross-ratio.
"""
from fractions import Fraction

from ysys import solutions as so
from ysys.contfrac import build_table
from ysys.errors import DegenerateZ

t = build_table((6, 4))
toi = so.time_ordered_index(t)
print("time order of vertices 0..9:", [toi.t(v) for v in range(10)])
print("time index report:", so.time_index_report(t).passed)

q = so.quad_vertices(t, 2, 1, 1)
print("corners of Y(2,1)(1):", tuple(q))

z = so.random_z(t.r(), seed=5)
y = so.cross_ratio_value(t, z, 2, 1, 1)
print("Y(2,1)(1) =", y, "~", float(y))

rep = so.cross_ratio_check(t, "rsg", z=z)
for c in rep.checks:
    print(f"  {c.name}: {c.passed} ({c.detail})")

# z-values must be distinct
try:
    so.cross_ratio_check(t, "rsg", z=[Fraction(1)] * t.r())
except DegenerateZ as exc:
    print("rejected:", exc)
