"""Closed-form solutions and dilogarithm identities.

* Time-ordered index: vertex t*r2 mod r gets index t, so the reflection axis
  Z(u) points at index u/2 like an hour hand.
* Cross-ratio solution of the RSG Y-system: Y(a,m,u) is a cross-ratio of four
  z-values at time-ordered corners of the quadrilateral around the diagonal
  realizing Y(a,m,u).
* Rogers dilogarithm sums over one period, checked against the closed forms
  and against tropical-sign counts.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Sequence

from . import geometry as geo
from .contfrac import RSG, SG, A_F, ContinuedFractionTable
from .errors import DegenerateZ, DomainError, NotInPlusClass, RejectedInput, SignIncoherence
from .labels import family_str
from .report import Report
from .schedule import YEngine, build_and_run, make_engines
from .seeds import ExactPositiveRational, tropical_sign
from .ysystems import PLUS, bisect, generate_relations, theta

# ---------------------------------------------------------------------------
# time-ordered index


@dataclass(frozen=True)
class TimeOrderedIndex:
    r: int
    r2: int
    t_of_vertex: tuple[int, ...]

    def t(self, v: int) -> int:
        return self.t_of_vertex[v % self.r]

    def vertex(self, t: int) -> int:
        return (t * self.r2) % self.r


def time_ordered_index(table: ContinuedFractionTable) -> TimeOrderedIndex:
    r, r2 = table.r(), table.r2
    inv = pow(r2, -1, r) if r > 1 else 0
    return TimeOrderedIndex(r, r2, tuple((v * inv) % r for v in range(r)))


def time_index_report(table: ContinuedFractionTable, us: Sequence[int] | None = None) -> Report:
    """Bijectivity, the generation steps, the adjacent step p_F and the hour-hand law."""
    toi = time_ordered_index(table)
    r, F = toi.r, table.F
    rep = Report(f"time-ordered index {table.n}")
    rep.add("bijection", sorted(toi.t_of_vertex) == list(range(r)))
    rep.add("vertex 0 -> 0 and r2 -> 1", toi.t(0) == 0 and toi.t(toi.r2) == 1 % r)
    for a in range(1, F + 1):
        step = (-1) ** (a - 1) * table.p(a)
        ok = all((toi.t(k + table.r(a + 1)) - toi.t(k) - step) % r == 0 for k in range(r))
        rep.add(f"shift by r^({a + 1}) adds {step}", ok)
    for u in (range(0, 2 * r) if us is None else us):
        bad = []
        for end in geo.axis_at(table, u).ends:
            if end % 2 == 0:
                s = 2 * toi.t(end // 2)
            else:
                s = toi.t((end - 1) // 2) + toi.t((end + 1) // 2)
            if (s - u) % r:
                bad.append(end)
        if bad:
            rep.add(f"hour hand at u={u}", False, f"axis ends {bad}")
    if not rep.failures:
        rep.add("hour hand law", True, "all u in one period")
    return rep


# ---------------------------------------------------------------------------
# quadrilaterals


class QuadIndices(NamedTuple):
    alpha: int
    beta: int
    gamma: int
    delta: int


def quad_vertices(table: ContinuedFractionTable, a: int, m: int, u: int) -> QuadIndices:
    """Time-ordered corners of the quadrilateral around Y(a,m,u) in the plus class."""
    if theta(table, a, m, u) % 2:
        raise NotInPlusClass(f"Y{family_str(a, m)}({u}) is in the minus class")
    if a == 1:
        return QuadIndices((u + m + 2) // 2, (u + m) // 2, (u - m) // 2, (u - m - 2) // 2)
    n, p, q = table.n_(a), table.p(a), table.p(a + 1)
    return QuadIndices((u + q - (n - m) * p) // 2, (u + q - (n + 2 - m) * p) // 2,
                       (u - q + (n + 2 - m) * p) // 2, (u - q + (n - m) * p) // 2)


def _turns(r: int, vs: Sequence[int]) -> int:
    """Number of clockwise turns made by visiting vs cyclically."""
    return sum((vs[(i + 1) % len(vs)] - vs[i]) % r for i in range(len(vs))) // r


def quad_geometry_check(traj) -> Report:
    """Formula corners against the quadrilateral read off Gamma(u), one period.

    The diagonal joins beta and delta; alpha and gamma are the apexes.  The
    corners alpha, beta, gamma, delta run anticlockwise for odd a and
    clockwise for even a.
    """
    table = traj.table
    toi = time_ordered_index(table)
    r = toi.r
    rep = Report(f"quadrilateral corners {table.n}")
    checked = 0
    bad = []
    for (a, m, u), lab in sorted(traj.occ_label.items()):
        if not 0 <= u < 2 * r or u not in traj.gammas:
            continue
        x, c1, y, c2 = geo.quadrilateral(traj.gammas[u], lab)
        qv = quad_vertices(table, a, m, u)
        vs = [toi.vertex(t) for t in qv]
        ok = {vs[1], vs[3]} == {x, y} and {vs[0], vs[2]} == {c1, c2}
        # anticlockwise = three clockwise turns for four distinct points
        want = 3 if a % 2 == 1 else 1
        ok = ok and _turns(r, vs) == want
        checked += 1
        if not ok:
            bad.append((a, m, u))
    rep.add("formula matches geometry", not bad and checked > 0,
            f"{checked} occurrences" if not bad else f"mismatch at {bad[:3]}")
    rep.data["checked"] = checked
    return rep


# ---------------------------------------------------------------------------
# cross-ratio solution


def cross_ratio(a, b, c, d):
    """(a,b,c,d) = (a-d)(b-c) / ((a-b)(c-d))."""
    return (a - d) * (b - c) / ((a - b) * (c - d))


def random_z(r: int, seed: int) -> list[Fraction]:
    """r pairwise distinct random rationals."""
    rng = random.Random(seed)
    out: dict[Fraction, None] = {}
    while len(out) < r:
        out.setdefault(Fraction(rng.randint(1, 50 * r), rng.randint(1, 7)))
    return list(out)


def _check_z(z: Sequence) -> None:
    if len(set(z)) != len(z):
        raise DegenerateZ("z-values must be pairwise distinct")


def cross_ratio_value(table: ContinuedFractionTable, z: Sequence, a: int, m: int, u: int):
    r = table.r()
    al, be, ga, de = quad_vertices(table, a, m, u)
    c = cross_ratio(z[al % r], z[be % r], z[ga % r], z[de % r])
    return c if table.eps(a) == 1 else 1 / c


def fock_goncharov_y(tri: geo.LabeledTriangulation, z: Sequence, toi: TimeOrderedIndex) -> list:
    """y of every diagonal as the cross-ratio of its anticlockwise quadrilateral.

    With diagonal (x, y), inner apex c1 and outer apex c2 the anticlockwise
    order starting at c1 is c1, x, c2, y.
    """
    E = geo.exchange_matrix(tri)
    out = []
    for lab in E.labels:
        x, c1, y, c2 = geo.quadrilateral(tri, lab)
        out.append(cross_ratio(z[toi.t(c1)], z[toi.t(x)], z[toi.t(c2)], z[toi.t(y)]))
    return out


def cross_ratio_check(table: ContinuedFractionTable, kind: str = RSG, seed: int = 0,
                      z: Sequence | None = None) -> Report:
    """The cross-ratio closed form against the relations, the seeds and the geometry."""
    if kind != RSG:
        raise RejectedInput("the cross-ratio solution is stated for RSG systems only")
    r = table.r()
    z = list(z) if z is not None else random_z(r, seed)
    if len(z) != r:
        raise DegenerateZ(f"need {r} z-values, got {len(z)}")
    _check_z(z)
    toi = time_ordered_index(table)
    rep = Report(f"cross-ratio solution RSG{table.n}")

    # substitution into every relation over one period
    rels = generate_relations(table, kind)
    bad = []
    count = 0
    for rel in rels:
        for u in range(0, 2 * r):
            if bisect(table, kind, rel.a, rel.m, u - rel.p) != PLUS:
                continue
            lhs = (cross_ratio_value(table, z, rel.a, rel.m, u - rel.p)
                   * cross_ratio_value(table, z, rel.a, rel.m, u + rel.p))
            rhs = Fraction(1)
            for f in rel.factors:
                y = cross_ratio_value(table, z, f.b, f.k, u + f.shift)
                rhs *= (1 + y) if f.eps == 1 else y / (1 + y)
            count += 1
            if lhs != rhs:
                bad.append((rel.a, rel.m, u))
    rep.add("relations hold under substitution", not bad and count > 0,
            f"{count} instances" if not bad else f"violations at {bad[:3]}")

    # Fock-Goncharov seed on Gamma(0), mutated along the schedule
    gamma0 = geo.build(table, kind)
    y0 = fock_goncharov_y(gamma0, z, toi)
    traj = build_and_run(table, kind, (0, 2 * r), {"y": YEngine(ExactPositiveRational(), y0)},
                         check=False, keep_gammas=True)
    bad = [key for key, val in traj.occ["y"].items() if val != cross_ratio_value(table, z, *key)]
    rep.add("Fock-Goncharov seed reproduces the closed form", not bad,
            f"{len(traj.occ['y'])} occurrences" if not bad else f"mismatch at {sorted(bad)[:3]}")
    rep.extend(quad_geometry_check(traj))
    return rep


# ---------------------------------------------------------------------------
# Rogers dilogarithm

PI2_6 = math.pi ** 2 / 6


def _li2_small(x: float) -> float:
    """Li2(x) for 0 <= x <= 1/2 by its power series."""
    terms = []
    xk = x
    k = 1
    while xk > 1e-18 * max(x, 1e-300) or k == 1:
        terms.append(xk / (k * k))
        k += 1
        xk *= x
        if k > 200:
            break
    return math.fsum(terms)


def rogers_L(x: float) -> float:
    """L(x) = Li2(x) + log(x) log(1-x) / 2 on [0, 1]."""
    x = float(x)
    if not 0.0 <= x <= 1.0 or math.isnan(x):
        raise DomainError(f"L(x) needs 0 <= x <= 1, got {x}")
    if x == 0.0:
        return 0.0
    if x == 1.0:
        return PI2_6
    if x > 0.5:
        return PI2_6 - rogers_L(1.0 - x)
    return _li2_small(x) + 0.5 * math.log(x) * math.log1p(-x)


# ---------------------------------------------------------------------------
# dilogarithm identities


def M_values(table: ContinuedFractionTable, kind: str) -> tuple[Fraction, Fraction]:
    """Conjectured right-hand sides (M+, M-) built from A_F."""
    r = table.r()
    even = sum(table.n_(a) for a in range(2, table.F + 1, 2))
    odd = sum(table.n_(a) for a in range(1, table.F + 1, 2))
    if kind == SG:
        return Fraction(r * (even + 1)), Fraction(r * odd)
    A = A_F(table)
    return r * (-6 * A + even + 2), r * (6 * A + odd - 4)


def N_counting(table: ContinuedFractionTable, kind: str) -> tuple[int, int]:
    """Closed-form tropical-sign counts (N+, N-)."""
    r, r2 = table.r(), table.r2
    even = sum(table.n_(a) for a in range(2, table.F + 1, 2))
    odd = sum(table.n_(a) for a in range(1, table.F + 1, 2))
    if kind == SG:
        return r * (even + 1), r * odd
    return r * (even + 2) - 6 * r2, r * (odd - 4) + 6 * r2


def O_value(table: ContinuedFractionTable, a: int) -> int:
    return ((table.r(a) - table.r(a + 1)) * table.p(a)
            + (table.r(a + 1) - table.r(a + 2)) * table.p(a + 1))


def generation_size(table: ContinuedFractionTable, kind: str, a: int) -> int:
    r = table.r()
    if a == 1:
        return r * (table.n_(1) + (1 if kind == SG else -2))
    return r * table.n_(a)


@dataclass
class DilogReport:
    table: ContinuedFractionTable
    kind: str
    S_plus: float
    S_minus: float
    N_plus: int
    N_minus: int
    M_plus: Fraction
    M_minus: Fraction
    A_F: Fraction
    per_generation: dict[int, tuple[int, int]] = field(default_factory=dict)
    report: Report = field(default_factory=lambda: Report("dilogarithm"))

    @property
    def passed(self) -> bool:
        return self.report.passed

    def to_dict(self) -> dict:
        return {
            "n": list(self.table.n),
            "kind": self.kind,
            "S_plus": self.S_plus,
            "S_minus": self.S_minus,
            "N_plus": self.N_plus,
            "N_minus": self.N_minus,
            "M_plus": str(self.M_plus),
            "M_minus": str(self.M_minus),
            "A_F": str(self.A_F),
            "per_generation": {str(a): list(v) for a, v in sorted(self.per_generation.items())},
            **self.report.to_dict(),
        }


def dilog_identity_check(traj, table: ContinuedFractionTable | None = None, kind: str | None = None,
                         value_engine: str = "y", sign_engine: str = "trop", atol: float = 1e-6) -> DilogReport:
    """Dilogarithm sums over 0 <= u < 2r against M, tropical counts N and the closed forms."""
    table = table or traj.table
    kind = kind or traj.kind
    r = table.r()
    vals = traj.occ[value_engine]
    signs = traj.occ[sign_engine]
    keys = sorted(k for k in vals if 0 <= k[2] < 2 * r)
    plus_terms, minus_terms = [], []
    per_gen: dict[int, list[int]] = {}
    incoherent = []
    for key in keys:
        y = float(vals[key])
        plus_terms.append(rogers_L(1.0 / (1.0 + y)))
        minus_terms.append(rogers_L(y / (1.0 + y)))
        try:
            s = tropical_sign(signs[key])
        except SignIncoherence:
            incoherent.append(key)
            continue
        counts = per_gen.setdefault(key[0], [0, 0])
        counts[0 if s > 0 else 1] += 1
    S_plus = math.fsum(plus_terms) / PI2_6
    S_minus = math.fsum(minus_terms) / PI2_6
    N_plus = sum(c[0] for c in per_gen.values())
    N_minus = sum(c[1] for c in per_gen.values())
    M_plus, M_minus = M_values(table, kind)
    A = A_F(table)
    out = DilogReport(table, kind, S_plus, S_minus, N_plus, N_minus, M_plus, M_minus, A,
                      {a: tuple(c) for a, c in per_gen.items()},
                      Report(f"dilogarithm {kind.upper()}{table.n}"))
    rep = out.report
    total = generation_size(table, kind, 1) + sum(generation_size(table, kind, a) for a in range(2, table.F + 1))
    rep.add("occurrence count", len(keys) == total, f"{len(keys)} vs {total}")
    rep.add("sign coherence", not incoherent, f"mixed c-vectors at {incoherent[:3]}" if incoherent else "")
    rep.add("S+ = M+", abs(S_plus - float(M_plus)) <= atol, f"{S_plus:.10f} vs {M_plus}")
    rep.add("S- = M-", abs(S_minus - float(M_minus)) <= atol, f"{S_minus:.10f} vs {M_minus}")
    Nc = N_counting(table, kind)
    rep.add("N = counting formula", (N_plus, N_minus) == Nc, f"{(N_plus, N_minus)} vs {Nc}")
    rep.add("N = M", (N_plus, N_minus) == (M_plus, M_minus), f"{(N_plus, N_minus)} vs {(M_plus, M_minus)}")
    rep.add("A_F = r2 / r", A == Fraction(table.r2, r), f"{A} vs {table.r2}/{r}")
    for a in range(2, table.F + 1):
        O = O_value(table, a)
        Na = generation_size(table, kind, a)
        want = (O, Na - O) if a % 2 == 1 else (Na - O, O)
        got = tuple(per_gen.get(a, (0, 0)))
        rep.add(f"generation {a} counts", got == want, f"{got} vs {want}")
    return out


def run_dilog(table: ContinuedFractionTable, kind: str, seed: int = 0) -> DilogReport:
    """Float values and tropical signs over [0, 2r] from one shared initialization."""
    r = table.r()
    n = len(geo.build(table, kind).arcs)
    engines = make_engines(n, mode="float", seed=seed, tropical=True)
    traj = build_and_run(table, kind, (0, 2 * r), engines, check=False, keep_gammas=False)
    return dilog_identity_check(traj, table, kind)
