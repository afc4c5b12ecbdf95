"""Continued-fraction data of a digit sequence.

Every later step is sized by this table: the polygon has r vertices, the
axes advance by r2, and generation a repeats with period 2 p_a.
"""
from ysys.contfrac import A_F, build_table, verify_cf_identities

t = build_table((6, 4, 3))

print("digits", t.n)
for a in range(1, t.F + 1):
    print(f"  a={a}: p={t.p(a):3d}  q={t.q(a):3d}")
print("second level: p2_3 =", t.p(3, 2), " q2_3 =", t.q(3, 2))
print("r, r2, r3 =", t.r(), t.r(2), t.r(3))

# the alternating sum A_F collapses to r2 / r
print("A_F =", A_F(t), "=", f"{t.r2}/{t.r()}")

rep = verify_cf_identities(t)
print(f"{len(rep.checks)} identities checked, all pass: {rep.passed}")
