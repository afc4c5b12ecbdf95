"""Continued-fraction tables attached to a sequence (n_1, ..., n_F).

For 1 <= k <= a <= F the numbers q^{(k)}_a obey

    q^{(k)}_a = n_a q^{(k)}_{a-1} + q^{(k)}_{a-2},   q^{(k)}_{k-1} = 1,  q^{(k)}_k = n_k,

with p^{(k)}_a = q^{(k)}_{a-1}, so that q^{(k)}_a / p^{(k)}_a = [n_a, ..., n_k].
The polygon sizes are r^{(k)} = p^{(k)}_F + q^{(k)}_F with r^{(F+1)} = r^{(F+2)} = 1.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Sequence

from .errors import RejectedInput
from .report import Report

RSG = "rsg"
SG = "sg"
KINDS = (RSG, SG)


def parse_sequence(text: str | Sequence[int]) -> tuple[int, ...]:
    """Accept "6,4,3" or an iterable of ints."""
    if isinstance(text, str):
        try:
            seq = tuple(int(t) for t in text.replace(" ", "").split(",") if t)
        except ValueError as exc:
            raise RejectedInput(f"cannot parse sequence {text!r}") from exc
    else:
        seq = tuple(int(t) for t in text)
    return seq


def validate_sequence(n: Sequence[int], kind: str | None = None) -> tuple[int, ...]:
    n = tuple(int(x) for x in n)
    if len(n) < 1:
        raise RejectedInput("sequence must be non-empty")
    if n[0] < 2:
        raise RejectedInput("n_1 must be at least 2")
    if any(x < 1 for x in n):
        raise RejectedInput("all n_a must be positive")
    if kind is not None and kind not in KINDS:
        raise RejectedInput(f"unknown system kind {kind!r}")
    if kind is not None and n == (2,):
        raise RejectedInput("the sequence (2) is excluded")
    return n


@dataclass(frozen=True)
class ContinuedFractionTable:
    n: tuple[int, ...]
    _p: dict = field(repr=False)
    _q: dict = field(repr=False)
    _r: dict = field(repr=False)

    @property
    def F(self) -> int:
        return len(self.n)

    def n_(self, a: int) -> int:
        return self.n[a - 1]

    def p(self, a: int, k: int = 1) -> int:
        """p^{(k)}_a; for k = 1 and a = F+1 this is the extension q_F."""
        if k == 1 and a == self.F + 1:
            return self._q[(1, self.F)]
        return self._p[(k, a)]

    def q(self, a: int, k: int = 1) -> int:
        return self._q[(k, a)]

    def r(self, k: int = 1) -> int:
        return self._r[k]

    def eps(self, a: int) -> int:
        return 1 if a % 2 == 1 else -1

    @property
    def size(self) -> int:
        return self._r[1]

    @property
    def r2(self) -> int:
        return self._r[2]

    def to_dict(self) -> dict:
        F = self.F
        return {
            "n": list(self.n),
            "p": {f"{k},{a}": self._p[(k, a)] for k in range(1, F + 1) for a in range(k, F + 1)},
            "q": {f"{k},{a}": self._q[(k, a)] for k in range(1, F + 1) for a in range(k, F + 1)},
            "r": {str(k): self._r[k] for k in range(1, F + 3)},
            "A_F": fraction_str(A_F(self)),
        }


def fraction_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def build_table(seq: Sequence[int], kind: str | None = None) -> ContinuedFractionTable:
    n = validate_sequence(seq, kind)
    F = len(n)
    p: dict[tuple[int, int], int] = {}
    q: dict[tuple[int, int], int] = {}
    for k in range(1, F + 1):
        prev, cur = 1, n[k - 1]  # q^{(k)}_{k-1}, q^{(k)}_k
        p[(k, k)] = prev
        q[(k, k)] = cur
        for a in range(k + 1, F + 1):
            prev, cur = cur, n[a - 1] * cur + prev
            p[(k, a)] = prev
            q[(k, a)] = cur
    r = {F + 1: 1, F + 2: 1}
    for k in range(1, F + 1):
        r[k] = p[(k, F)] + q[(k, F)]
    return ContinuedFractionTable(n, p, q, r)


def A_F(table: ContinuedFractionTable) -> Fraction:
    F = table.F
    total = Fraction(0)
    for a in range(1, F):
        total += Fraction((-1) ** (a + 1), table.p(a) * table.q(a))
    total += Fraction((-1) ** (F + 1), table.p(F) * table.r())
    return total


def verify_cf_identities(table: ContinuedFractionTable) -> Report:
    rep = Report("continued fractions")
    F, n = table.F, table.n
    for k in range(1, F + 1):
        for a in range(k, F + 1):
            qa, pa = table.q(a, k), table.p(a, k)
            qm1 = n[a - 1] * (table.q(a - 1, k) if a - 1 >= k else 1)
            qm2 = table.q(a - 2, k) if a - 2 >= k else (1 if a - 2 == k - 1 else 0)
            rep.add(f"recurrence q({k},{a})", qa == qm1 + qm2, f"{qa} vs {qm1 + qm2}")
            rep.add(f"coprime p,q ({k},{a})", gcd(pa, qa) == 1)
            if a > k:
                rep.add(f"p=q shift ({k},{a})", pa == table.q(a - 1, k))
            if k + 1 <= a:
                lhs = qa * table.p(a, k + 1) - table.q(a, k + 1) * pa
                rep.add(f"determinant ({k},{a})", lhs == (-1) ** (a - k + 1), f"{lhs}")
        rk = table.r(k)
        rep.add(f"r({k}) from p+q", rk == table.p(F, k) + table.q(F, k))
        rec = n[k - 1] * table.r(k + 1) + table.r(k + 2)
        rep.add(f"r({k}) backward recursion", rk == rec, f"{rk} vs {rec}")
    rep.add("gcd(r, r2) = 1", gcd(table.r(1), table.r(2)) == 1)
    for a in range(2, F + 1):
        rep.add(f"gcd(p_{a}, p2_{a}) = 1", gcd(table.p(a), table.p(a, 2)) == 1)
    for a in range(3, F + 1):
        lhs = table.p(a - 1) * table.p(a, 2) - table.p(a) * table.p(a - 1, 2)
        rep.add(f"cross determinant a={a}", lhs == (-1) ** a, f"{lhs}")
    af = A_F(table)
    rep.add("A_F = r2/r", af == Fraction(table.r(2), table.r(1)), fraction_str(af))
    return rep
