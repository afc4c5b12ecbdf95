"""The reflection schedule.

Mutating the axis-crossing asymmetric arcs at time u is the same as
reflecting the triangulation across the axis Z(u).  Two steps equal a rotation
by r2 followed by the relabelling nu.
"""
from ysys import geometry as geo
from ysys import schedule as sch
from ysys.contfrac import build_table

t = build_table((6, 4, 3))
g0 = geo.build(t, "rsg")
s = sch.derive_schedule(g0, t, "rsg")
print("S(-1) =", sorted(map(str, s.S_minus1)))
print("S(0)  =", sorted(map(str, s.S_0)))

# a checked run asserts reflection, mutation sets and the rotation law at every step
traj = sch.run(g0, s, (-50, 120), None, check=True)
print("checked steps:", len(traj.forward))

# every label of generation a comes back every 2 p_a steps
for a in range(1, t.F + 1):
    lab = next(l for l in traj.labels if l.a == a)
    times = traj.forward_times(lab)
    print(f"  {lab}: forward at {times[:4]} ...  gap {times[1] - times[0]} = 2*{t.p(a)}")

# Gamma(2) is Gamma(0) turned by r2 = 17 with copies renumbered
want = geo.rotate(geo.relabel(g0, geo.nu_map(t, "rsg")), t.r2)
print("Gamma(2) == rot^17(nu(Gamma(0))):", traj.gammas[2] == want)

# snapshots: the latest forward time of each label
snap = traj.snapshot(1)
print("second generation snapshot times at u=1:", sorted({v for l, v in snap.items() if l.a == 2}))
