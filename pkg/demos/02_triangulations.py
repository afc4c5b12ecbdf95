"""Initial triangulations, their quivers, and SVG drawings.

The unpunctured construction realizes the RSG system, the once-punctured one
the SG system.  Drawings go to demos/out/.
"""
from pathlib import Path

from ysys import geometry as geo
from ysys import schedule as sch
from ysys import svg
from ysys.contfrac import build_table

out = Path(__file__).with_name("out")
out.mkdir(exist_ok=True)

t = build_table((6,))
for kind in ("rsg", "sg"):
    g = geo.build(t, kind)
    E = geo.exchange_matrix(g)
    print(kind, "heptagon,", len(g.arcs), "arcs")
    for i, j in sorted(E.arrows()):
        print(f"   {i} -> {j}")

# the running example: a 106-gon with two generations of interval structure
t = build_table((6, 4, 3))
g = geo.build(t, "sg")
s = sch.derive_schedule(g, t, "sg")
print("SG(6,4,3):", len(g.arcs), "arcs, triangulation:", geo.is_triangulation(g))
for u in (-1, 0):
    print(f"  quasi-symmetric about Z({u}):", geo.quasi_symmetry_check(g, geo.axis_at(t, u)))

picture = svg.render(g, axes=[geo.axis_at(t, -1), geo.axis_at(t, 0)], circles=s.S_0, crosses=s.S_minus1,
                     title="SG(6,4,3), Gamma(0)")
(out / "sg_643.svg").write_text(picture)
print("wrote", out / "sg_643.svg")

# trinity: where the three special boundary points fall at each generation
for a, row in geo.trinity(t).items():
    print(f"  generation {a}:", {k: v[1] for k, v in row.items()})
