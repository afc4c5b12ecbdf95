from fractions import Fraction

import pytest

from ysys import geometry as geo
from ysys import schedule as sch
from ysys import tsystems as ts
from ysys.contfrac import build_table
from ysys.ysystems import claimed_period


def x_trajectory(n, kind, seed=0, keep_gammas=False, window=None):
    t = build_table(n, kind)
    size = len(geo.build(t, kind).arcs)
    engines = sch.make_engines(size, seed=seed, y=False, x=True)
    return sch.build_and_run(t, kind, window, engines, check=False, keep_gammas=keep_gammas)


def test_rsg_6_relations():
    rels = ts.generate_t_relations(build_table((6,)), "rsg")
    assert [str(r) for r in rels] == [
        "T(1,1)(u-1) T(1,1)(u+1) = 1 + T(1,2)(u+0)",
        "T(1,2)(u-1) T(1,2)(u+1) = 1 + T(1,1)(u+0)*T(1,3)(u+0)",
        "T(1,3)(u-1) T(1,3)(u+1) = 1 + T(1,2)(u+0)*T(1,4)(u+0)",
        "T(1,4)(u-1) T(1,4)(u+1) = 1 + T(1,3)(u+0)",
    ]


def test_last_first_generation_node_of_64():
    rel = ts.generate_t_relations(build_table((6, 4)), "rsg").get(1, 4)
    assert rel.monomials == (((1, 3, 0),), ((2, 1, -5), (2, 1, 5)))


def test_last_second_generation_node_of_643():
    rel = ts.generate_t_relations(build_table((6, 4, 3)), "rsg").get(2, 4)
    assert rel.p == 6
    assert rel.monomials == (((2, 3, 0),), ((3, 1, -19), (3, 1, 19)))


def test_sg_bar_relations():
    rels = ts.generate_t_relations(build_table((6, 4)), "sg")
    for m in (-2, -1):
        assert rels.get(1, m).monomials == (((1, 0, 0),), ((2, 1, 0),))


@pytest.mark.parametrize("n,kind", [((6,), "rsg"), ((6, 4), "rsg"), ((6, 4, 3), "rsg"), ((3,), "rsg"),
                                    ((2, 3), "rsg"), ((5, 1, 3), "rsg"), ((6,), "sg"), ((6, 4), "sg"),
                                    ((7,), "sg"), ((2, 1, 2), "rsg")])
def test_matches_snapshot_oracle(n, kind):
    traj = x_trajectory(n, kind, keep_gammas=True)
    rels = ts.generate_t_relations(traj.table, kind)
    rep = ts.compare_with_trajectory(rels, traj)
    assert rep.passed, rep.failures


@pytest.mark.parametrize("seed", [0, 1, 2])
@pytest.mark.parametrize("n,kind", [((6,), "rsg"), ((6, 4), "rsg"), ((6, 4, 3), "rsg"), ((6,), "sg"),
                                    ((6, 4), "sg"), ((6, 4, 3), "sg")])
def test_relations_hold_exactly(n, kind, seed):
    traj = x_trajectory(n, kind, seed)
    rep = ts.verify_t(traj, ts.generate_t_relations(traj.table, kind))
    assert rep.passed, rep.data["relation_failures"][:3]
    assert all(v > 0 for v in rep.data["instances"].values())


def test_all_eight_relations_of_64():
    traj = x_trajectory((6, 4), "rsg")
    rep = ts.verify_t(traj, ts.generate_t_relations(traj.table, "rsg"))
    assert len(rep.data["instances"]) == 8
    assert rep.passed


@pytest.mark.parametrize("n,kind", [((6,), "rsg"), ((6, 4), "rsg"), ((6, 4, 3), "rsg"), ((3,), "rsg"),
                                    ((6,), "sg"), ((6, 4), "sg")])
def test_periods_match_y_system(n, kind):
    traj = x_trajectory(n, kind)
    rep = ts.verify_t_periodicity(traj)
    assert rep.passed, rep.failures
    assert rep.data["period"] == {"claimed": claimed_period(traj.table, kind), "minimal_confirmed": True}


def test_period_values():
    assert claimed_period(build_table((6, 4, 3)), "rsg") == 212
    assert claimed_period(build_table((6, 4)), "sg") == 124
    assert claimed_period(build_table((3,)), "rsg") == 4


def test_unit_initialization():
    t = build_table((6, 4))
    g = geo.build(t, "rsg")
    engines = {"x": sch.XEngine([Fraction(1)] * len(g.arcs))}
    traj = sch.build_and_run(t, "rsg", (0, 40), engines, check=False)
    first = {}
    for (a, m, u), v in sorted(traj.occ["x"].items(), key=lambda kv: kv[0][2]):
        first.setdefault((a, m), (u, v))
    # everything recorded at u = 0 is still 1; the first mutation makes 2
    assert all(v == 1 for u, v in first.values() if u == 0)
    assert Fraction(2) in traj.occ["x"].values()
    assert ts.verify_t(traj, ts.generate_t_relations(t, "rsg")).passed


def test_corrupted_value_is_reported():
    traj = x_trajectory((6, 4), "rsg")
    key = sorted(traj.occ["x"])[40]
    traj.occ["x"][key] *= 2
    assert not ts.verify_t(traj, ts.generate_t_relations(traj.table, "rsg")).passed
