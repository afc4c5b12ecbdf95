import random

import numpy as np
import pytest

from ysys import geometry as geo
from ysys.contfrac import build_table
from ysys.errors import UnknownLabel
from ysys.labels import BAR1, BAR2, Label
from ysys.seeds import mutate_matrix

SYMMETRY_SET = [(6, 4, 3), (6, 4, 3, 3), (6, 3, 4, 3), (7, 4, 3, 3), (7, 3, 4, 3)]


def built(n, kind):
    t = build_table(n, kind)
    return t, geo.build(t, kind)


def test_zigzag_of_heptagon():
    _, g = built((6,), "rsg")
    assert dict(g.arcs) == {
        Label(1, 1): geo.Arc(1, 6),
        Label(1, 2): geo.Arc(1, 5),
        Label(1, 3): geo.Arc(2, 5),
        Label(1, 4): geo.Arc(2, 4),
    }


@pytest.mark.parametrize("n", [(3,), (6,), (7,), (2, 3), (6, 4), (6, 4, 3), (5, 1, 3), (2, 1, 2), (3, 7, 1, 2)])
def test_arc_counts(n):
    t, g = built(n, "rsg")
    assert len(g.arcs) == t.r() - 3
    assert geo.is_triangulation(g)
    if n != (2,) and n[0] != 2:
        t, g = built(n, "sg")
        assert len(g.arcs) == t.r()
        assert geo.is_triangulation(g)


def test_arc_counts_sweep():
    rng = random.Random(5)
    for _ in range(40):
        F = rng.randint(1, 4)
        n = tuple([rng.randint(3, 7)] + [rng.randint(1, 7) for _ in range(F - 1)])
        for kind, extra in (("rsg", -3), ("sg", 0)):
            t, g = built(n, kind)
            assert len(g.arcs) == t.r() + extra
            assert geo.is_triangulation(g)
            assert geo.interval_report(t).passed


def test_rsg_6_is_alternating_A4():
    _, g = built((6,), "rsg")
    E = geo.exchange_matrix(g)
    assert E.labels == tuple(Label(1, m) for m in (1, 2, 3, 4))
    assert E.B.tolist() == [[0, 1, 0, 0], [-1, 0, -1, 0], [0, 1, 0, 1], [0, 0, -1, 0]]


def test_sg_6_is_alternating_D7():
    _, g = built((6,), "sg")
    E = geo.exchange_matrix(g)
    assert E.labels == (Label(1, BAR1), Label(1, BAR2)) + tuple(Label(1, m) for m in range(5))
    assert E.B.tolist() == [
        [0, 0, 1, 0, 0, 0, 0],
        [0, 0, 1, 0, 0, 0, 0],
        [-1, -1, 0, -1, 0, 0, 0],
        [0, 0, 1, 0, 1, 0, 0],
        [0, 0, 0, -1, 0, -1, 0],
        [0, 0, 0, 0, 1, 0, 1],
        [0, 0, 0, 0, 0, -1, 0],
    ]
    tags = {lab: a.tag for lab, a in g.arcs.items() if a.at_puncture}
    assert tags == {Label(1, BAR1): geo.NOTCHED, Label(1, BAR2): geo.PLAIN}


def test_exchange_matrix_shape():
    for n in [(6, 4, 3), (7, 3, 4, 3)]:
        for kind in ("rsg", "sg"):
            B = geo.exchange_matrix(built(n, kind)[1]).B
            assert (B == -B.T).all()
            assert abs(B).max() <= 2
            assert not np.diag(B).any()


def test_square_flip():
    g = geo.LabeledTriangulation(4, False, {Label(1, 1): geo.Arc(0, 2)})
    assert geo.flip(g, Label(1, 1)).arcs[Label(1, 1)] == geo.Arc(1, 3)
    with pytest.raises(UnknownLabel):
        geo.flip(g, Label(1, 2))


def test_random_flips_match_matrix_mutation():
    rng = random.Random(11)
    starts = [built(n, k)[1] for n in [(6,), (7,), (6, 4), (3, 2, 2), (5, 1, 3)] for k in ("rsg", "sg")]
    starts.append(built((2, 3), "rsg")[1])
    for g in starts:
        for _ in range(1000 // len(starts) + 1):
            E = geo.exchange_matrix(g)
            k = rng.choice(E.labels)
            h = geo.flip(g, k)
            assert geo.is_triangulation(h)
            assert np.array_equal(geo.exchange_matrix(h).B, mutate_matrix(E.B, E.index()[k]))
            assert geo.flip(h, k) == g
            g = h


def test_rotation_and_reflection_laws():
    for n in [(6,), (6, 4), (6, 4, 3)]:
        t, g = built(n, "rsg")
        assert geo.rotate(g, t.r()) == g
        twice = geo.reflect(geo.reflect(g, geo.axis_at(t, -1)), geo.axis_at(t, 0))
        assert twice.arc_set() == geo.rotate(g, t.r2).arc_set()


def test_nu_shifts_third_generation_by_four():
    t = build_table((6, 4, 3))
    nu = geo.nu_map(t, "rsg")
    assert nu(Label(3, 2, 1)) == Label(3, 2, 5)
    assert nu(Label(3, 2, 23)) == Label(3, 2, 2)
    lab = Label(3, 1, 7)
    for _ in range(25):
        lab = nu(lab)
    assert lab == Label(3, 1, 7)


@pytest.mark.parametrize("n", SYMMETRY_SET)
@pytest.mark.parametrize("kind", ["rsg", "sg"])
def test_quasi_symmetry(n, kind):
    t, g = built(n, kind)
    assert geo.quasi_symmetry_check(g, geo.axis_at(t, 0))
    assert geo.quasi_symmetry_check(g, geo.axis_at(t, -1))


def test_quasi_symmetry_fails_off_axis():
    t, g = built((6, 4, 3), "rsg")
    assert not geo.quasi_symmetry_check(g, geo.Axis(t.r(), 1))


def test_trivial_symmetric_square():
    g = geo.LabeledTriangulation(4, False, {Label(1, 1): geo.Arc(0, 2)})
    assert geo.quasi_symmetry_check(g, geo.Axis(4, 0))


@pytest.mark.parametrize("n", SYMMETRY_SET + [(6, 4), (7, 2), (5, 1, 3), (8, 1, 1, 2)])
def test_trinity(n):
    t = build_table(n)
    res = geo.trinity(t)
    assert sorted(res) == list(range(2, t.F + 1))
    assert geo.type_change_check(t).passed


def test_trinity_types_at_second_generation():
    row = geo.trinity(build_table((6, 4, 3)))[2]
    assert (row["Q(0)"][1], row["P(-1)"][1], row["Q(-1)"][1]) == ("N_R", "R", "(L,N_R)")
    row = geo.trinity(build_table((7, 4, 3)))[2]
    assert (row["Q(0)"][1], row["P(-1)"][1], row["Q(-1)"][1]) == ("(N_L,R)", "R", "N_L")


def test_interval_counts_running_example():
    tree = geo.interval_tree(build_table((6, 4, 3)))
    for a, count, width in [(2, 6, 17), (3, 25, 4)]:
        lr = [iv for iv in tree[a] if iv.kind in ("L", "R")]
        assert len(lr) == count
        assert {iv.width for iv in lr} == {width}


def test_json_round_trip():
    for kind in ("rsg", "sg"):
        _, g = built((6, 4), kind)
        assert geo.LabeledTriangulation.from_json(g.to_json()) == g
