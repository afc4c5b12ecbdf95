import math
import random
from fractions import Fraction

import pytest

from ysys import geometry as geo
from ysys import schedule as sch
from ysys import solutions as so
from ysys.contfrac import A_F, build_table
from ysys.errors import DegenerateZ, DomainError, NotInPlusClass, RejectedInput


def test_time_ordered_index_definition():
    toi = so.time_ordered_index(build_table((6, 4, 3)))
    assert toi.t(0) == 0
    assert toi.t(17) == 1
    assert toi.t(34) == 2
    assert toi.vertex(2) == 34


@pytest.mark.parametrize("n,pF", [((6, 4), 6), ((6, 4, 3), 25), ((6,), 1), ((7, 3, 4, 3), 95)])
def test_adjacent_vertices_differ_by_last_p(n, pF):
    t = build_table(n)
    assert t.p(t.F) == pF
    toi = so.time_ordered_index(t)
    steps = {(toi.t(v + 1) - toi.t(v)) % t.r() for v in range(t.r())}
    assert steps == {pF} or steps == {t.r() - pF}


@pytest.mark.parametrize("n", [(6,), (6, 4), (6, 4, 3), (2, 3), (7, 3, 4, 3)])
def test_time_index_report(n):
    assert so.time_index_report(build_table(n)).passed


def test_quad_formula_differences():
    t = build_table((6, 4, 3))
    for u in range(0, 20):
        for m in range(1, 5):
            if (u + m) % 2 == 0:
                q = so.quad_vertices(t, 1, m, u)
                assert (q.alpha - q.beta, q.beta - q.gamma, q.gamma - q.delta) == (1, m, 1)
        for a in (2, 3):
            for m in range(1, t.n_(a) + 1):
                try:
                    q = so.quad_vertices(t, a, m, u)
                except NotInPlusClass:
                    continue
                assert q.alpha == q.beta + t.p(a)
                assert q.delta == q.gamma - t.p(a)


def test_quad_example_and_plus_class():
    t = build_table((6, 4))
    assert tuple(so.quad_vertices(t, 2, 1, 1)) == (4, -2, 3, -3)
    with pytest.raises(NotInPlusClass):
        so.quad_vertices(t, 2, 1, 0)


@pytest.mark.parametrize("n", [(6,), (6, 4), (6, 4, 3)])
def test_quad_formula_matches_geometry(n):
    t = build_table(n)
    traj = sch.build_and_run(t, "rsg", (0, 2 * t.r()), None, check=False)
    rep = so.quad_geometry_check(traj)
    assert rep.passed, rep.failures
    assert rep.data["checked"] == t.r() * (sum(n) - 2)


def test_cross_ratio_inversion():
    a, b, c, d = map(Fraction, (3, 7, 2, 11))
    assert so.cross_ratio(a, d, c, b) == 1 / so.cross_ratio(a, b, c, d)


@pytest.mark.parametrize("seed", [0, 1, 2])
@pytest.mark.parametrize("n", [(6,), (6, 4), (6, 4, 3)])
def test_cross_ratio_solution(n, seed):
    rep = so.cross_ratio_check(build_table(n), "rsg", seed=seed)
    assert rep.passed, rep.failures


def test_cross_ratio_input_errors():
    t = build_table((6,))
    with pytest.raises(DegenerateZ):
        so.cross_ratio_check(t, "rsg", z=[Fraction(1)] * 7)
    with pytest.raises(DegenerateZ):
        so.cross_ratio_check(t, "rsg", z=[Fraction(k) for k in range(5)])
    with pytest.raises(RejectedInput):
        so.cross_ratio_check(t, "sg")


def test_random_z_distinct():
    z = so.random_z(106, 4)
    assert len(z) == len(set(z)) == 106
    assert z == so.random_z(106, 4)


def test_rogers_special_values():
    assert so.rogers_L(0.5) == pytest.approx(math.pi ** 2 / 12, abs=1e-15)
    assert so.rogers_L(0.0) == 0.0
    assert so.rogers_L(1.0) == math.pi ** 2 / 6
    for bad in (-0.1, 1.5, float("nan")):
        with pytest.raises(DomainError):
            so.rogers_L(bad)


def test_euler_identity():
    rng = random.Random(99)
    for _ in range(1000):
        x = rng.random()
        assert abs(so.rogers_L(x) + so.rogers_L(1 - x) - math.pi ** 2 / 6) <= 1e-12


def test_against_reference_dilogarithm():
    special = pytest.importorskip("scipy.special")
    rng = random.Random(7)
    for _ in range(300):
        x = rng.random()
        # scipy's spence(1 - x) is Li2(x)
        want = float(special.spence(1 - x)) + 0.5 * math.log(x) * math.log1p(-x)
        assert so.rogers_L(x) == pytest.approx(want, abs=1e-13)


def test_five_term_identity():
    rng = random.Random(8)
    for _ in range(200):
        x, y = rng.random(), rng.random()
        lhs = (so.rogers_L(x) + so.rogers_L(y)
               - so.rogers_L(x * y) - so.rogers_L(x * (1 - y) / (1 - x * y))
               - so.rogers_L(y * (1 - x) / (1 - x * y)))
        assert abs(lhs) < 1e-12


@pytest.mark.parametrize("n,kind,counts", [((6,), "rsg", (8, 20)), ((6, 4), "rsg", (156, 92)),
                                           ((6, 4, 3), "rsg", (534, 632)), ((6,), "sg", (7, 42)),
                                           ((6, 4), "sg", (155, 186)), ((6, 4, 3), "sg", (530, 954)),
                                           ((3,), "rsg", (2, 2)), ((2, 3), "rsg", (21, 6)),
                                           ((7,), "sg", (8, 56))])
def test_counting_formula(n, kind, counts):
    t = build_table(n, kind)
    assert so.N_counting(t, kind) == counts
    assert so.M_values(t, kind) == counts
    size = sum(so.generation_size(t, kind, a) for a in range(1, t.F + 1))
    assert sum(counts) == size


def test_A_F_for_test_tables():
    for n in [(3,), (6,), (7,), (2, 3), (6, 4), (6, 4, 3), (6, 4, 3, 3), (7, 3, 4, 3)]:
        t = build_table(n)
        assert A_F(t) == Fraction(t.r2, t.r())


@pytest.mark.parametrize("seed", [0, 1, 2])
@pytest.mark.parametrize("n,kind", [((6,), "rsg"), ((6, 4), "rsg"), ((6, 4, 3), "rsg"), ((6,), "sg"),
                                    ((6, 4), "sg"), ((6, 4, 3), "sg"), ((2, 3), "rsg"), ((7,), "sg")])
def test_dilogarithm_identities(n, kind, seed):
    rep = so.run_dilog(build_table(n, kind), kind, seed)
    assert rep.passed, rep.report.failures
    assert (rep.N_plus, rep.N_minus) == so.N_counting(rep.table, kind)
    assert abs(rep.S_plus - float(rep.M_plus)) <= 1e-6
    assert abs(rep.S_minus - float(rep.M_minus)) <= 1e-6


def test_generation_split_of_643():
    rep = so.run_dilog(build_table((6, 4, 3)), "rsg")
    t = rep.table
    O2, O3 = so.O_value(t, 2), so.O_value(t, 3)
    assert rep.per_generation[2] == (t.r() * 4 - O2, O2)
    assert rep.per_generation[3] == (O3, t.r() * 3 - O3)
