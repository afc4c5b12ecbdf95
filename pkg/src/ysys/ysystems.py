"""Symbolic RSG/SG Y-system relations and their verification on trajectories.

A relation for the family (a, m) reads

    Y(a,m,u-p_a) Y(a,m,u+p_a) = prod over factors (1 + Y(b,k,u+d)^e)^e

and is stored as a list of factors (b, k, d, e).  Values are looked up in a
trajectory's occurrence map, so Y(a,m,u) always means the y-variable of the
unique copy of (a,m) forward-mutated at time u.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Iterable

from .contfrac import RSG, SG, ContinuedFractionTable, validate_sequence
from .errors import RejectedInput
from .labels import BAR1, BAR2, family_str, m_name
from .report import Report

PLUS = "plus"
MINUS = "minus"


@dataclass(frozen=True, order=True)
class Factor:
    b: int
    k: int
    shift: int
    eps: int

    def __str__(self) -> str:
        var = f"Y{family_str(self.b, self.k)}(u{self.shift:+d})" if self.shift else f"Y{family_str(self.b, self.k)}(u)"
        return f"(1+{var})" if self.eps == 1 else f"(1+{var}^-1)^-1"


@dataclass(frozen=True)
class Relation:
    a: int
    m: int
    p: int  # LHS half-shift
    factors: tuple[Factor, ...]

    @property
    def family(self) -> tuple[int, int]:
        return (self.a, self.m)

    def shifts(self) -> list[int]:
        return sorted(f.shift for f in self.factors)

    def __str__(self) -> str:
        lhs = f"Y{family_str(self.a, self.m)}(u-{self.p}) Y{family_str(self.a, self.m)}(u+{self.p})"
        return lhs + " = " + " ".join(str(f) for f in self.factors)

    def to_json(self) -> dict:
        return {
            "a": self.a,
            "m": m_name(self.m),
            "p": self.p,
            "rhs": [[f.b, m_name(f.k), f.shift, f.eps] for f in self.factors],
        }


@dataclass(frozen=True)
class RelationSet:
    table: ContinuedFractionTable
    kind: str
    relations: tuple[Relation, ...]

    def __len__(self) -> int:
        return len(self.relations)

    def __iter__(self):
        return iter(self.relations)

    def get(self, a: int, m: int) -> Relation:
        for rel in self.relations:
            if rel.family == (a, m):
                return rel
        raise KeyError((a, m))

    def families(self) -> list[tuple[int, int]]:
        return [rel.family for rel in self.relations]

    def to_json(self) -> str:
        return json.dumps({"n": list(self.table.n), "kind": self.kind,
                           "relations": [rel.to_json() for rel in self.relations]}, sort_keys=True)


# ---------------------------------------------------------------------------
# index sets and diagrams


def families(table: ContinuedFractionTable, kind: str) -> list[tuple[int, int]]:
    """All (a, m) of the Y-system, in chain order (extra D-type legs first)."""
    n = table.n
    out: list[tuple[int, int]] = []
    if kind == SG:
        out += [(1, BAR1), (1, BAR2)] + [(1, m) for m in range(0, n[0] - 1)]
    elif n[0] != 2:
        out += [(1, m) for m in range(1, n[0] - 1)]
    for a in range(2, table.F + 1):
        out += [(a, m) for m in range(1, n[a - 1] + 1)]
    return out


def _chain(table: ContinuedFractionTable, kind: str) -> list[tuple[int, int]]:
    return [f for f in families(table, kind) if f[1] not in (BAR1, BAR2)]


def adjacency(table: ContinuedFractionTable, kind: str) -> dict[tuple[int, int], list[tuple[int, int]]]:
    """Neighbours in the linear (RSG), tadpole (n_1 = 2) or D-type (SG) diagram."""
    chain = _chain(table, kind)
    adj: dict[tuple[int, int], list[tuple[int, int]]] = {f: [] for f in families(table, kind)}
    for x, y in zip(chain, chain[1:]):
        adj[x].append(y)
        adj[y].append(x)
    if kind == SG:
        for leg in ((1, BAR1), (1, BAR2)):
            adj[leg].append((1, 0))
            adj[(1, 0)].append(leg)
    elif table.n[0] == 2 and (2, 1) in adj:
        adj[(2, 1)].append((2, 1))  # tadpole loop
    return adj


def _successor(table: ContinuedFractionTable, kind: str, fam: tuple[int, int]) -> tuple[int, int] | None:
    chain = _chain(table, kind)
    i = chain.index(fam)
    return chain[i + 1] if i + 1 < len(chain) else None


# ---------------------------------------------------------------------------
# generation


def _factor(table: ContinuedFractionTable, b: int, k: int, shift: int, eps: int | None = None) -> Factor:
    return Factor(b, k, shift, table.eps(b) if eps is None else eps)


def _relation_2_1(table: ContinuedFractionTable, kind: str) -> list[Factor]:
    n1 = table.n_(1)
    out = []
    nxt = _successor(table, kind, (2, 1))
    if nxt is not None:
        out.append(_factor(table, *nxt, 0))
    if kind == SG:
        out += [Factor(1, BAR1, 0, -1), Factor(1, BAR2, 0, -1)]
        ms = range(0, n1 - 1)
    else:
        out.append(Factor(1, 1, 0, 1))
        ms = range(1, n1 - 1)
    for m in ms:
        out += [Factor(1, m, -(1 + m), -1), Factor(1, m, 1 + m, -1)]
    return out


def _relation_a_1(table: ContinuedFractionTable, kind: str, a: int) -> list[Factor]:
    ea = table.eps(a)
    out = []
    nxt = _successor(table, kind, (a, 1))
    if nxt is not None:
        out.append(_factor(table, *nxt, 0, ea if nxt == (a, 2) else None))
    k = table.n_(a - 2) - (2 if a == 3 else 0)
    if not (a == 3 and k == 0 and kind == RSG):
        out.append(Factor(a - 2, k, 0, ea))
    na1, pa, pa1 = table.n_(a - 1), table.p(a), table.p(a - 1)
    for m in range(1, na1 + 1):
        d = pa - (na1 + 1 - m) * pa1
        out += [Factor(a - 1, m, -d, ea), Factor(a - 1, m, d, ea)]
    return out


def generate_relations(table: ContinuedFractionTable, kind: str) -> RelationSet:
    validate_sequence(table.n, kind)
    if kind not in (RSG, SG):
        raise RejectedInput(f"unknown system kind {kind!r}")
    adj = adjacency(table, kind)
    tadpole = kind == RSG and table.n_(1) == 2
    rels = []
    for a, m in families(table, kind):
        if a >= 3 and m == 1:
            factors = _relation_a_1(table, kind, a)
        elif (a, m) == (2, 1) and not tadpole:
            factors = _relation_2_1(table, kind)
        else:
            factors = [_factor(table, b, k, 0) for b, k in adj[(a, m)]]
        rels.append(Relation(a, m, table.p(a), tuple(sorted(factors))))
    return RelationSet(table, kind, tuple(rels))


def expected_relation_count(table: ContinuedFractionTable, kind: str) -> int:
    if kind == SG:
        return sum(table.n) + 1
    if table.n_(1) == 2:
        return sum(table.n[1:])
    return sum(table.n) - 2


def reduce_to_rsg(rels: RelationSet) -> RelationSet:
    """Specialize an SG relation set by Y(1,0) = 0 and Y(1,bar1) = Y(1,bar2) = -1.

    Under this specialization (1+Y0) and (1+Y0^-1)^-1 become 1 and 0-factors
    disappear.  The (2,1) relation is first rewritten through the (1,0)
    relation so that every remaining factor is in normal form.
    """
    if rels.kind != SG:
        raise ValueError("reduction applies to SG relation sets")
    table = rels.table
    if table.n_(1) == 2:
        raise ValueError("the tadpole system is not a specialization of the SG system")
    out = []
    for rel in rels:
        if rel.a == 1 and rel.m <= 0:
            continue
        factors = [f for f in rel.factors if not (f.b == 1 and f.k <= 0)]
        if rel.family == (2, 1):
            # (1+Y1bar^-1)^-1 (1+Y2bar^-1)^-1 (1+Y0(u-1)^-1)^-1 (1+Y0(u+1)^-1)^-1
            # equals Y1bar Y2bar (1+Y1)(1+Y0(u-1))^-1 (1+Y0(u+1))^-1 by the (1,0)
            # relation; at Y0 = 0, Y1bar = Y2bar = -1 this is (1+Y1(u)).
            factors.append(Factor(1, 1, 0, 1))
        out.append(Relation(rel.a, rel.m, rel.p, tuple(sorted(factors))))
    return RelationSet(table, RSG, tuple(out))


# ---------------------------------------------------------------------------
# bisection


def theta(table: ContinuedFractionTable, a: int, m: int, u: int) -> int:
    if a == 1 and m in (BAR1, BAR2):
        return u + 1
    return u + table.p(a + 1) - (table.n_(a) - m) * table.p(a)


def bisect(table: ContinuedFractionTable, kind: str, a: int, m: int, u: int) -> str:
    return PLUS if theta(table, a, m, u) % 2 == 0 else MINUS


def closure_check(rels: RelationSet, us: Iterable[int] | None = None) -> Report:
    """Every relation with its LHS in the plus class keeps its RHS there too."""
    table = rels.table
    us = range(0, 2 * table.r()) if us is None else us
    rep = Report("bisection closure")
    for rel in rels:
        bad = []
        for u in us:
            if bisect(table, rels.kind, rel.a, rel.m, u - rel.p) != PLUS:
                continue
            for f in rel.factors:
                if bisect(table, rels.kind, f.b, f.k, u + f.shift) != PLUS:
                    bad.append((u, str(f)))
        rep.add(f"closure {family_str(rel.a, rel.m)}", not bad, f"{bad[:3]}" if bad else "")
    return rep


# ---------------------------------------------------------------------------
# evaluation


def _field_ops(values: dict):
    """(equal, one) suited to the value type stored in an occurrence map."""
    sample = next(iter(values.values()))
    if isinstance(sample, float):
        return (lambda x, y: math.isclose(x, y, rel_tol=1e-9, abs_tol=0.0)), 1.0
    return (lambda x, y: x == y), 1


def evaluate_factor(f: Factor, y) -> object:
    return 1 + y if f.eps == 1 else y / (1 + y)


def relation_instances(rel: Relation, occ: dict, window: tuple[int, int]) -> list[int]:
    """Centres u at which the LHS pair is recorded and every RHS time is in the window."""
    lo, hi = window
    out = []
    for (a, m, t) in occ:
        if (a, m) != rel.family:
            continue
        u = t + rel.p
        if u + rel.p > hi or (a, m, u + rel.p) not in occ:
            continue
        if all(lo <= u + f.shift <= hi for f in rel.factors):
            out.append(u)
    return sorted(out)


def verify_relations(traj, rels: RelationSet, engine: str = "y") -> Report:
    """Check each relation at every in-window instance of the trajectory."""
    occ = traj.occ[engine]
    eq, one = _field_ops(occ)
    rep = Report(f"Y-system {rels.kind.upper()}{traj.table.n}")
    failures = []
    counts = {}
    for rel in rels:
        us = relation_instances(rel, occ, traj.window)
        counts[family_str(rel.a, rel.m)] = len(us)
        ok = True
        for u in us:
            lhs = occ[(rel.a, rel.m, u - rel.p)] * occ[(rel.a, rel.m, u + rel.p)]
            rhs = one
            missing = None
            for f in rel.factors:
                key = (f.b, f.k, u + f.shift)
                if key not in occ:
                    missing = key
                    break
                rhs = rhs * evaluate_factor(f, occ[key])
            if missing is not None:
                ok = False
                failures.append({"a": rel.a, "m": m_name(rel.m), "u": u,
                                 "reason": f"Y{family_str(missing[0], missing[1])}({missing[2]}) is not an occurrence"})
            elif not eq(lhs, rhs):
                ok = False
                failures.append({"a": rel.a, "m": m_name(rel.m), "u": u, "lhs": str(lhs), "rhs": str(rhs)})
        rep.add(f"relation {family_str(rel.a, rel.m)}", ok and bool(us),
                f"{len(us)} instances" if ok else f"first failure {failures[-1]}")
    rep.data["instances"] = counts
    rep.data["relation_failures"] = failures
    return rep


# ---------------------------------------------------------------------------
# periodicity


def claimed_period(table: ContinuedFractionTable, kind: str) -> int:
    r = table.r()
    if kind == RSG:
        return r if table.n == (3,) else 2 * r
    return 2 * r if r % 2 == 0 else 4 * r


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n) if n % d == 0]


def _shift_holds(occ: dict, eq, shift: int, swap: dict | None = None) -> tuple[bool, int]:
    """Whether Y(a,m',u+shift) = Y(a,m,u) for every occurrence with u+shift in the window.

    Returns (holds, number of compared occurrences).  A shifted point that is
    not an occurrence counts as a violation.
    """
    hi = max(t for (_, _, t) in occ)
    compared = 0
    for (a, m, u), val in occ.items():
        if u + shift > hi:
            continue
        m2 = swap.get(m, m) if (swap and a == 1) else m
        other = occ.get((a, m2, u + shift))
        if other is None or not eq(other, val):
            return False, compared
        compared += 1
    return True, compared


def verify_periodicity(traj, kind: str | None = None, engine: str = "y", minimality: bool = True) -> Report:
    """Value-level periodicity with divisor-scan minimality."""
    table = traj.table
    kind = kind or traj.kind
    occ = traj.occ[engine]
    eq, _ = _field_ops(occ)
    r = table.r()
    P = claimed_period(table, kind)
    lo, hi = traj.window
    rep = Report(f"periodicity {kind.upper()}{table.n}")
    need = P + 2 * max(table.p(a) for a in range(1, table.F + 1))
    if hi - lo < need:
        rep.add("window covers a period plus a full seed", False, f"window {traj.window} shorter than {need}")
        return rep
    holds, cnt = _shift_holds(occ, eq, P)
    rep.add(f"period {P}", holds and cnt > 0, f"{cnt} occurrences compared")
    if kind == SG and r % 2 == 1:
        holds, cnt = _shift_holds(occ, eq, 2 * r, {BAR1: BAR2, BAR2: BAR1})
        rep.add(f"half period {2 * r} with bar1/bar2 swap", holds and cnt > 0, f"{cnt} occurrences compared")
    minimal = None
    if minimality:
        survivors = [d for d in _divisors(P) if _shift_holds(occ, eq, d)[0]]
        minimal = not survivors
        rep.add("minimality", minimal, f"proper divisors that are also periods: {survivors}" if survivors else "")
    rep.data["period"] = {"claimed": P, "minimal_confirmed": minimal}
    return rep


def half_period_check(traj, engine: str = "y") -> Report:
    """RSG with F = 1: Y(1,m,u+r) = Y(1,n_1-1-m,u)."""
    table = traj.table
    occ = traj.occ[engine]
    eq, _ = _field_ops(occ)
    r, n1 = table.r(), table.n_(1)
    rep = Report(f"half period RSG{table.n}")
    if table.F != 1:
        rep.add("applies to F = 1", False)
        return rep
    swap = {m: n1 - 1 - m for m in range(1, n1 - 1)}
    holds, cnt = _shift_holds(occ, eq, r, swap)
    rep.add(f"Y(1,m,u+{r}) = Y(1,{n1 - 1}-m,u)", holds and cnt > 0, f"{cnt} occurrences compared")
    return rep
