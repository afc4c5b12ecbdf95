import pytest

from ysys import geometry as geo
from ysys import schedule as sch
from ysys import ysystems as ys
from ysys.contfrac import build_table
from ysys.labels import BAR1, BAR2

RSG_SET = [(3,), (6,), (7,), (2, 3), (6, 4), (6, 4, 3)]
SG_SET = [(6,), (7,), (6, 4), (6, 4, 3)]


def trajectory(n, kind, seed=0, mode="exact", window=None):
    t = build_table(n, kind)
    size = len(geo.build(t, kind).arcs)
    engines = sch.make_engines(size, mode=mode, seed=seed)
    return sch.build_and_run(t, kind, window, engines, check=False, keep_gammas=False)


def test_rsg_6_relations():
    rels = ys.generate_relations(build_table((6,)), "rsg")
    assert [str(r) for r in rels] == [
        "Y(1,1)(u-1) Y(1,1)(u+1) = (1+Y(1,2)(u))",
        "Y(1,2)(u-1) Y(1,2)(u+1) = (1+Y(1,1)(u)) (1+Y(1,3)(u))",
        "Y(1,3)(u-1) Y(1,3)(u+1) = (1+Y(1,2)(u)) (1+Y(1,4)(u))",
        "Y(1,4)(u-1) Y(1,4)(u+1) = (1+Y(1,3)(u))",
    ]


def test_rsg_64_second_generation_relation():
    rels = ys.generate_relations(build_table((6, 4)), "rsg")
    assert len(rels) == 8
    rel = rels.get(2, 1)
    assert rel.p == 6
    assert sorted(rel.shifts()) == [-5, -4, -3, -2, 0, 0, 2, 3, 4, 5]
    assert {(f.b, f.k, f.shift, f.eps) for f in rel.factors} >= {(1, 1, 0, 1), (2, 2, 0, -1)}


def test_rsg_643_third_generation_relation():
    rel = ys.generate_relations(build_table((6, 4, 3)), "rsg").get(3, 1)
    assert rel.p == 25
    assert sorted(rel.shifts()) == [-19, -13, -7, -1, 0, 0, 1, 7, 13, 19]
    assert all(f.eps == 1 for f in rel.factors)


def test_sg_64_second_generation_relation():
    rel = ys.generate_relations(build_table((6, 4)), "sg").get(2, 1)
    got = sorted((f.b, f.k, f.shift, f.eps) for f in rel.factors)
    want = sorted([(1, BAR1, 0, -1), (1, BAR2, 0, -1), (2, 2, 0, -1)]
                  + [(1, m, s * (m + 1), -1) for m in range(0, 5) for s in (-1, 1)])
    assert got == want


@pytest.mark.parametrize("n,kind,count", [((6,), "rsg", 4), ((6, 4), "rsg", 8), ((6, 4, 3), "rsg", 11),
                                          ((2, 3), "rsg", 3), ((2, 1, 2), "rsg", 3), ((6,), "sg", 7),
                                          ((6, 4, 3), "sg", 14)])
def test_relation_counts(n, kind, count):
    t = build_table(n, kind)
    rels = ys.generate_relations(t, kind)
    assert len(rels) == count == ys.expected_relation_count(t, kind)


def test_serialization_is_stable():
    t = build_table((6, 4, 3))
    for kind in ("rsg", "sg"):
        assert ys.generate_relations(t, kind).to_json() == ys.generate_relations(t, kind).to_json()


@pytest.mark.parametrize("n", [(6,), (7,), (6, 4), (6, 4, 3), (5, 1, 3), (3, 3, 1, 2)])
def test_reduction_to_rsg(n):
    t = build_table(n)
    reduced = ys.reduce_to_rsg(ys.generate_relations(t, "sg"))
    assert reduced.to_json() == ys.generate_relations(t, "rsg").to_json()


def test_bisection_examples():
    t = build_table((6,))
    assert ys.theta(t, 1, 2, 0) == 2
    assert ys.bisect(t, "rsg", 1, 2, 0) == ys.PLUS
    assert ys.bisect(t, "sg", 1, BAR1, 1) == ys.PLUS
    assert ys.bisect(t, "sg", 1, BAR1, 0) == ys.MINUS


@pytest.mark.parametrize("n,kind", [((6, 4, 3), "rsg"), ((6, 4, 3), "sg"), ((2, 3), "rsg"), ((5, 1, 3), "sg")])
def test_closure(n, kind):
    assert ys.closure_check(ys.generate_relations(build_table(n, kind), kind)).passed


@pytest.mark.parametrize("seed", [0, 1, 2])
@pytest.mark.parametrize("n,kind", [(n, "rsg") for n in RSG_SET] + [(n, "sg") for n in SG_SET])
def test_relations_hold_exactly(n, kind, seed):
    traj = trajectory(n, kind, seed)
    rep = ys.verify_relations(traj, ys.generate_relations(traj.table, kind))
    assert rep.passed, rep.data["relation_failures"][:3]
    assert not rep.data["relation_failures"]


@pytest.mark.parametrize("n,kind", [((5, 1, 3), "rsg"), ((5, 1, 3), "sg"), ((2, 1, 2), "rsg"), ((3, 3, 1, 2), "rsg")])
def test_exceptional_chains(n, kind):
    traj = trajectory(n, kind)
    assert ys.verify_relations(traj, ys.generate_relations(traj.table, kind)).passed


def test_third_generation_instances_per_period():
    traj = trajectory((6, 4, 3), "rsg", window=(-50, 262))
    rel = ys.generate_relations(traj.table, "rsg").get(3, 1)
    us = ys.relation_instances(rel, traj.occ["y"], traj.window)
    # one instance per copy s in every 2 p_3 = 50 steps, r = 106 per period
    assert len([u for u in us if 0 <= u < 50]) == 25
    assert len([u for u in us if 0 <= u < 212]) == 106


def test_relation_counterexample_is_reported():
    traj = trajectory((6,), "rsg")
    key = sorted(traj.occ["y"])[5]
    traj.occ["y"][key] += 1
    rep = ys.verify_relations(traj, ys.generate_relations(traj.table, "rsg"))
    assert not rep.passed
    assert rep.data["relation_failures"]


def test_float_all_ones():
    t = build_table((6, 4))
    gamma0 = geo.build(t, "rsg")
    engines = {"y": sch.YEngine(sch.Float64Positive(), [1.0] * len(gamma0.arcs))}
    traj = sch.build_and_run(t, "rsg", None, engines, check=False)
    assert ys.verify_relations(traj, ys.generate_relations(t, "rsg")).passed


@pytest.mark.parametrize("n,kind,period", [((3,), "rsg", 4), ((6,), "rsg", 14), ((7,), "rsg", 16),
                                           ((2, 3), "rsg", 18), ((6, 4), "rsg", 62), ((6, 4, 3), "rsg", 212),
                                           ((6,), "sg", 28), ((7,), "sg", 16), ((6, 4), "sg", 124),
                                           ((6, 4, 3), "sg", 212)])
def test_periodicity_and_minimality(n, kind, period):
    traj = trajectory(n, kind)
    rep = ys.verify_periodicity(traj)
    assert rep.passed, rep.failures
    assert rep.data["period"] == {"claimed": period, "minimal_confirmed": True}


def test_rsg_3_half_period_fails():
    traj = trajectory((3,), "rsg")
    eq, _ = ys._field_ops(traj.occ["y"])
    assert not ys._shift_holds(traj.occ["y"], eq, 2)[0]
    assert ys._shift_holds(traj.occ["y"], eq, 4)[0]


def test_sg_odd_r_swap():
    traj = trajectory((6, 4), "sg")
    eq, _ = ys._field_ops(traj.occ["y"])
    assert ys._shift_holds(traj.occ["y"], eq, 62, {BAR1: BAR2, BAR2: BAR1})[0]
    assert not ys._shift_holds(traj.occ["y"], eq, 62)[0]


def test_rsg_6_half_period():
    assert ys.half_period_check(trajectory((6,), "rsg")).passed


def test_short_window_is_refused():
    traj = trajectory((6, 4), "sg", window=(0, 100))
    assert not ys.verify_periodicity(traj).passed
