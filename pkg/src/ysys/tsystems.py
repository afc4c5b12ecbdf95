"""RSG/SG T-systems on coefficient-free cluster variables.

The x-variable of the copy of (a,m) forward-mutated at time u is T(a,m)(u-p_a).
Every relation has the shape

    T(a,m)(u-p_a) T(a,m)(u+p_a) = M1(u) + M2(u)

with two monomials in T-variables.  Boundary symbols resolve to 1: T(b,k)
with b > F, T(a,0) in the RSG chain, and absent neighbours.
"""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass

from . import geometry as geo
from .contfrac import RSG, SG, ContinuedFractionTable, validate_sequence
from .errors import RejectedInput
from .labels import BAR1, BAR2, family_str, m_name
from .report import Report
from .ysystems import _field_ops, _shift_holds, adjacency, claimed_period, families

Term = tuple[int, int, int]  # (b, k, shift)


@dataclass(frozen=True)
class TRelation:
    a: int
    m: int
    p: int
    monomials: tuple[tuple[Term, ...], tuple[Term, ...]]

    @property
    def family(self) -> tuple[int, int]:
        return (self.a, self.m)

    def __str__(self) -> str:
        def mono(ts):
            return "*".join(f"T{family_str(b, k)}(u{s:+d})" for b, k, s in ts) or "1"
        name = f"T{family_str(self.a, self.m)}"
        return f"{name}(u-{self.p}) {name}(u+{self.p}) = {mono(self.monomials[0])} + {mono(self.monomials[1])}"

    def to_json(self) -> dict:
        return {"a": self.a, "m": m_name(self.m), "p": self.p,
                "rhs": [[[b, m_name(k), s] for b, k, s in mono] for mono in self.monomials]}


@dataclass(frozen=True)
class TRelationSet:
    table: ContinuedFractionTable
    kind: str
    relations: tuple[TRelation, ...]

    def __len__(self) -> int:
        return len(self.relations)

    def __iter__(self):
        return iter(self.relations)

    def get(self, a: int, m: int) -> TRelation:
        for rel in self.relations:
            if rel.family == (a, m):
                return rel
        raise KeyError((a, m))

    def to_json(self) -> str:
        return json.dumps({"n": list(self.table.n), "kind": self.kind,
                           "relations": [rel.to_json() for rel in self.relations]}, sort_keys=True)


def _canon(m1, m2) -> tuple[tuple[Term, ...], tuple[Term, ...]]:
    return tuple(sorted([tuple(sorted(m1)), tuple(sorted(m2))]))


def _last_m(table: ContinuedFractionTable, a: int) -> int:
    return table.n_(1) - 2 if a == 1 else table.n_(a)


def generate_t_relations(table: ContinuedFractionTable, kind: str) -> TRelationSet:
    validate_sequence(table.n, kind)
    if kind not in (RSG, SG):
        raise RejectedInput(f"unknown system kind {kind!r}")
    F = table.F
    fams = families(table, kind)
    present = set(fams)
    adj = adjacency(table, kind)
    order = {f: i for i, f in enumerate(fams)}

    def T(b, k, s=0):
        return [(b, k, s)] if (b, k) in present and b <= F else []

    rels = []
    for a, m in fams:
        if m in (BAR1, BAR2):
            m1, m2 = T(1, 0), T(2, 1)
        else:
            # neighbours earlier in the chain (the loop counts as its own predecessor)
            m1 = [t for b, k in adj[(a, m)] if order[(b, k)] <= order[(a, m)] for t in T(b, k)]
            if m == _last_m(table, a):
                m1 += T(a + 2, 1)
                d = table.p(a + 1) - table.p(a)
            else:
                m1 += T(a, m + 1)
                d = table.p(a + 1) - (_last_m(table, a) + 1 - m) * table.p(a)
            if kind == RSG and (a, m) == (1, 1):
                m1 += T(2, 1)
            m2 = T(a + 1, 1, -d) + T(a + 1, 1, d)
        rels.append(TRelation(a, m, table.p(a), _canon(m1, m2)))
    return TRelationSet(table, kind, tuple(rels))


# ---------------------------------------------------------------------------
# trajectory oracle


def derive_t_relations(traj) -> dict[tuple[int, int], Counter]:
    """Read the exchange relations off the trajectory via snapshots.

    For each forward mutation at time u the neighbours' current x-values are
    T(b,k)(t+p_b), t being their last forward time before u.  Returns, per
    family, a Counter of the canonical monomial pairs with shifts relative to u.
    Needs a trajectory with stored triangulations.
    """
    table = traj.table
    lo, hi = traj.window
    out: dict[tuple[int, int], Counter] = {}
    for u in sorted(traj.gammas):
        if u not in traj.forward:
            continue
        try:
            snap = traj.snapshot(u - 1)
        except Exception:
            continue
        E = geo.exchange_matrix(traj.gammas[u])
        idx = E.index()
        for lab in traj.forward[u]:
            k = idx[lab]
            pos, neg = [], []
            for j, other in enumerate(E.labels):
                b = int(E.B[j, k])
                if b:
                    term = (other.a, other.m, snap[other] + table.p(other.a) - u)
                    (pos if b > 0 else neg).extend([term] * abs(b))
            out.setdefault(lab.family, Counter())[_canon(pos, neg)] += 1
    return out


def compare_with_trajectory(rels: TRelationSet, traj) -> Report:
    derived = derive_t_relations(traj)
    rep = Report(f"T-system vs snapshots {rels.kind.upper()}{rels.table.n}")
    for rel in rels:
        got = derived.get(rel.family, Counter())
        ok = set(got) == {rel.monomials}
        rep.add(f"snapshot form {family_str(rel.a, rel.m)}", ok, "" if ok else f"derived {dict(got)}")
    return rep


# ---------------------------------------------------------------------------
# verification


def verify_t(traj, rels: TRelationSet, engine: str = "x") -> Report:
    """Check every T-relation at each centre u whose terms are all recorded."""
    occ = traj.occ[engine]
    eq, one = _field_ops(occ)
    table = traj.table
    lo, hi = traj.window
    rep = Report(f"T-system {rels.kind.upper()}{table.n}")
    failures = []
    counts = {}

    def key(b, k, s):  # T(b,k)(s) lives at forward time s + p_b
        return (b, k, s + table.p(b))

    for rel in rels:
        n_ok = 0
        ok = True
        for (a, m, t) in list(occ):
            if (a, m) != rel.family:
                continue
            u = t  # T(u-p) at forward time u, T(u+p) at forward time u+2p
            keys = [key(b, k, u + s) for mono in rel.monomials for b, k, s in mono]
            later = (a, m, u + 2 * rel.p)
            if later[2] > hi or any(not lo <= kk[2] <= hi for kk in keys):
                continue
            missing = [kk for kk in [later] + keys if kk not in occ]
            if missing:
                ok = False
                failures.append({"a": a, "m": m_name(m), "u": u, "reason": f"{missing[0]} is not an occurrence"})
                continue
            lhs = occ[(a, m, u)] * occ[later]
            rhs = 0
            for mono in rel.monomials:
                term = one
                for b, k, s in mono:
                    term = term * occ[key(b, k, u + s)]
                if not term > 0:
                    ok = False
                rhs = rhs + term
            if eq(lhs, rhs):
                n_ok += 1
            else:
                ok = False
                failures.append({"a": a, "m": m_name(m), "u": u, "lhs": str(lhs), "rhs": str(rhs)})
        counts[family_str(*rel.family)] = n_ok
        rep.add(f"T-relation {family_str(*rel.family)}", ok and n_ok > 0, f"{n_ok} instances")
    rep.data["instances"] = counts
    rep.data["relation_failures"] = failures
    return rep


def verify_t_periodicity(traj, engine: str = "x", minimality: bool = True) -> Report:
    """T-values repeat with the Y-system period of the same system."""
    table, kind = traj.table, traj.kind
    occ = traj.occ[engine]
    eq, _ = _field_ops(occ)
    r = table.r()
    P = claimed_period(table, kind)
    lo, hi = traj.window
    rep = Report(f"T periodicity {kind.upper()}{table.n}")
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
        survivors = [d for d in range(1, P) if P % d == 0 and _shift_holds(occ, eq, d)[0]]
        minimal = not survivors
        rep.add("minimality", minimal, f"proper divisors that are also periods: {survivors}" if survivors else "")
    rep.data["period"] = {"claimed": P, "minimal_confirmed": minimal}
    return rep
