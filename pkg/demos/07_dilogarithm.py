"""Dilogarithm identities over one period.

Summing the Rogers dilogarithm of 1/(1+Y) and Y/(1+Y) over all occurrences
in one period gives integers; tropical signs of the same occurrences count
them exactly.
"""
import math

from ysys import solutions as so
from ysys.contfrac import build_table

print("L(1/2) - pi^2/12 =", so.rogers_L(0.5) - math.pi ** 2 / 12)

for n, kind in [((6,), "rsg"), ((6, 4), "rsg"), ((6, 4, 3), "rsg"), ((6,), "sg"), ((6, 4, 3), "sg")]:
    rep = so.run_dilog(build_table(n, kind), kind, seed=0)
    print(f"{kind.upper()}{n}: sums ({rep.S_plus:.9f}, {rep.S_minus:.9f})"
          f"  signs ({rep.N_plus}, {rep.N_minus})  formula ({rep.M_plus}, {rep.M_minus})  ok={rep.passed}")
    if kind == "rsg" and len(n) == 3:
        print("   per generation (+, -):", rep.per_generation)
