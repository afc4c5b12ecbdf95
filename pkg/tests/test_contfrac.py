import random
from fractions import Fraction

import pytest

from ysys.contfrac import A_F, build_table, parse_sequence, verify_cf_identities
from ysys.errors import RejectedInput


def test_running_example_table():
    t = build_table((6, 4, 3))
    assert [(t.p(a), t.q(a)) for a in (1, 2, 3)] == [(1, 6), (6, 25), (25, 81)]
    assert (t.p(3, 2), t.q(3, 2)) == (4, 13)
    assert (t.r(), t.r(2), t.r(3)) == (106, 17, 4)
    assert t.r(4) == t.r(5) == 1
    # the extension p_{F+1} = q_F
    assert t.p(4) == 81


def test_small_tables():
    t = build_table((6,))
    assert (t.p(1), t.q(1), t.r(), t.r2) == (1, 6, 7, 1)
    t = build_table((6, 4))
    assert (t.r(), t.r2) == (31, 5)


def test_identity_values():
    t = build_table((6, 4, 3))
    assert t.q(3) * t.p(3, 2) - t.q(3, 2) * t.p(3) == -1
    assert t.p(2) * t.p(3, 2) - t.p(3) * t.p(2, 2) == -1
    assert verify_cf_identities(t).passed


def test_A_F_examples():
    assert A_F(build_table((6,))) == Fraction(1, 7)
    assert A_F(build_table((6, 4))) == Fraction(5, 31)
    assert A_F(build_table((6, 4, 3))) == Fraction(17, 106)


def test_random_tables():
    rng = random.Random(2024)
    for _ in range(100):
        F = rng.randint(1, 6)
        n = [rng.randint(2, 9)] + [rng.randint(1, 9) for _ in range(F - 1)]
        if n == [2]:
            n = [3]
        t = build_table(n)
        rep = verify_cf_identities(t)
        assert rep.passed, (n, rep.failures)
        assert A_F(t) == Fraction(t.r2, t.r())


@pytest.mark.parametrize("n,kind", [((2,), "rsg"), ((2,), "sg"), ((1, 3), None), ((4, 0), None), ((), None)])
def test_rejected_inputs(n, kind):
    with pytest.raises(RejectedInput):
        build_table(n, kind)


def test_parse_sequence():
    assert parse_sequence("6,4,3") == (6, 4, 3)
    with pytest.raises(RejectedInput):
        parse_sequence("6,x")
