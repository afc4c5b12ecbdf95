"""T-system on coefficient-free cluster variables.

The x-variable mutated at time u is T(a,m)(u - p_a).  The relations have two
monomials on the right and share the Y-system period.
"""
from ysys import geometry as geo
from ysys import schedule as sch
from ysys import tsystems as ts
from ysys.contfrac import build_table

t = build_table((6, 4, 3))
rels = ts.generate_t_relations(t, "rsg")
for fam in [(1, 1), (1, 4), (2, 4), (3, 1)]:
    print(rels.get(*fam))

n_labels = len(geo.build(t, "rsg").arcs)
engines = sch.make_engines(n_labels, seed=2, y=False, x=True)
traj = sch.build_and_run(t, "rsg", None, engines, check=False, keep_gammas=True)

print("relations hold exactly:", ts.verify_t(traj, rels).passed)
print("same as exchange relations read off the seeds:", ts.compare_with_trajectory(rels, traj).passed)
print("period:", ts.verify_t_periodicity(traj).data["period"])
