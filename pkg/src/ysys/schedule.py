"""The reflection mutation schedule and trajectories.

At time u the labels S(u) are mutated to pass from Gamma(u) to Gamma(u+1).
S(-1) and S(0) are read off from the initial triangulation as the arcs that
meet the axes Z(-1), Z(0) and are not symmetric with respect to them; the
rest follow from S(u+2) = nu(S(u)).
"""
from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable

import numpy as np

from . import geometry as geo
from .contfrac import RSG, SG, ContinuedFractionTable
from .errors import (
    CompatibilityFailure,
    OccurrenceMismatch,
    ReflectionMismatch,
    RotationMismatch,
    WindowTooSmall,
)
from .labels import Label
from .seeds import (
    ExactPositiveRational,
    Float64Positive,
    Semifield,
    TropicalLaurent,
    mutate_matrix,
    x_update,
    y_update,
)

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class MutationSchedule:
    table: ContinuedFractionTable
    kind: str
    S_minus1: frozenset[Label]
    S_0: frozenset[Label]

    def S(self, u: int) -> frozenset[Label]:
        if u % 2 == 0:
            base, power = self.S_0, u // 2
        else:
            base, power = self.S_minus1, (u + 1) // 2
        if power == 0:
            return base
        nu = geo.nu_map(self.table, self.kind, power)
        return frozenset(nu(lab) for lab in base)

    def axis(self, u: int) -> geo.Axis:
        return geo.axis_at(self.table, u)


def expected_schedule_size(table: ContinuedFractionTable, kind: str) -> int:
    return sum(table.n) + (1 if kind == SG else -2)


def _check_compatible(B: np.ndarray, index: dict[Label, int], labels: Iterable[Label], u: int) -> None:
    idx = [index[lab] for lab in labels]
    sub = B[np.ix_(idx, idx)]
    if sub.any():
        i, j = map(int, np.argwhere(sub)[0])
        labs = sorted(labels)
        raise CompatibilityFailure(f"u={u}: {labs[i]} and {labs[j]} share a triangle")


def derive_schedule(gamma0: geo.LabeledTriangulation, table: ContinuedFractionTable, kind: str) -> MutationSchedule:
    s0 = frozenset(geo.mutation_set(gamma0, geo.axis_at(table, 0)))
    sm = frozenset(geo.mutation_set(gamma0, geo.axis_at(table, -1)))
    if s0 & sm:
        raise CompatibilityFailure(f"S(-1) and S(0) intersect: {sorted(s0 & sm)}")
    want = expected_schedule_size(table, kind)
    if len(s0) + len(sm) != want:
        raise CompatibilityFailure(f"|S(-1)|+|S(0)| = {len(s0) + len(sm)}, expected {want}")
    E = geo.exchange_matrix(gamma0)
    index = E.index()
    _check_compatible(E.B, index, s0, 0)
    # S(-1) is a forward set of Gamma(-1); in Gamma(0) it is the set just mutated
    _check_compatible(E.B, index, sm, -1)
    return MutationSchedule(table, kind, sm, s0)


# ---------------------------------------------------------------------------
# value engines


class YEngine:
    def __init__(self, field_: Semifield, values: list):
        self.field = field_
        self.values = list(values)

    def update(self, B: np.ndarray, k: int) -> None:
        y_update(self.field, B, self.values, k)


class XEngine:
    def __init__(self, values: list):
        self.values = list(values)

    def update(self, B: np.ndarray, k: int) -> None:
        x_update(B, self.values, k)


def random_rationals(n: int, seed: int, lo: int = 1, hi: int = 50) -> list[Fraction]:
    """Independent uniform a/b with lo <= a, b <= hi."""
    rng = random.Random(seed)
    return [Fraction(rng.randint(lo, hi), rng.randint(lo, hi)) for _ in range(n)]


def make_engines(n: int, *, mode: str = "exact", seed: int = 0, y: bool = True, x: bool = False,
                 tropical: bool = False) -> dict[str, Any]:
    """Engines seeded reproducibly; float runs share the exact run's initial values."""
    engines: dict[str, Any] = {}
    init = random_rationals(n, seed)
    if y:
        if mode == "exact":
            engines["y"] = YEngine(ExactPositiveRational(), init)
        else:
            engines["y"] = YEngine(Float64Positive(), [float(v) for v in init])
    if x:
        xinit = random_rationals(n, seed + 7919)
        engines["x"] = XEngine(xinit if mode == "exact" else [float(v) for v in xinit])
    if tropical:
        field_ = TropicalLaurent(n)
        engines["trop"] = YEngine(field_, [field_.generator(i) for i in range(n)])
    return engines


# ---------------------------------------------------------------------------
# trajectories


@dataclass
class Trajectory:
    table: ContinuedFractionTable
    kind: str
    schedule: MutationSchedule
    window: tuple[int, int]
    labels: tuple[Label, ...]
    gammas: dict[int, geo.LabeledTriangulation] = field(default_factory=dict)
    forward: dict[int, frozenset[Label]] = field(default_factory=dict)
    occ: dict[str, dict[tuple[int, int, int], Any]] = field(default_factory=dict)
    occ_label: dict[tuple[int, int, int], Label] = field(default_factory=dict)
    initial: dict[str, list] = field(default_factory=dict)

    @property
    def r(self) -> int:
        return self.table.r()

    def value(self, engine: str, a: int, m: int, u: int):
        return self.occ[engine][(a, m, u)]

    def occurrences(self) -> set[tuple[int, int, int]]:
        return set(self.occ_label)

    def snapshot(self, u: int) -> dict[Label, int]:
        """Most recent forward mutation time <= u for every label."""
        lo = self.window[0]
        out: dict[Label, int] = {}
        for t in range(u, lo - 1, -1):
            for lab in self.forward.get(t, ()):
                out.setdefault(lab, t)
            if len(out) == len(self.labels):
                return out
        raise WindowTooSmall(f"not every label mutates in [{lo}, {u}]")

    def forward_times(self, label: Label) -> list[int]:
        return sorted(u for u, s in self.forward.items() if label in s)


def _record(traj: Trajectory, engines: dict, index: dict[Label, int], S: frozenset[Label], u: int) -> None:
    for lab in S:
        key = (lab.a, lab.m, u)
        if key in traj.occ_label and traj.occ_label[key] != lab:
            raise OccurrenceMismatch(f"two copies of ({lab.a},{lab.m}) mutate at u={u}")
        traj.occ_label[key] = lab
        for name, eng in engines.items():
            traj.occ[name][key] = eng.values[index[lab]]


def run(
    gamma0: geo.LabeledTriangulation,
    schedule: MutationSchedule,
    window: tuple[int, int],
    engines: dict[str, Any] | None = None,
    *,
    check: bool = True,
    keep_gammas: bool = True,
) -> Trajectory:
    """Run the schedule over [lo, hi] starting from Gamma(0) at u = 0.

    With ``check`` every step verifies mutation compatibility, that the
    forward mutation is the reflection across Z(u), that the mutation set is
    re-derived geometrically, that the exchange matrix of Gamma(u) agrees with
    the mutated matrix, and the rotation law Gamma(u+2) = rot(nu(Gamma(u))).
    """
    lo, hi = window
    if lo > 0 or hi < 0:
        raise WindowTooSmall("window must contain 0")
    table, kind = schedule.table, schedule.kind
    engines = engines or {}
    E0 = geo.exchange_matrix(gamma0)
    labels = E0.labels
    index = E0.index()
    traj = Trajectory(table, kind, schedule, window, labels)
    traj.occ = {name: {} for name in engines}
    traj.initial = {name: list(eng.values) for name, eng in engines.items()}

    def step(gamma, B, S, u, forward_dir):
        if check:
            _check_compatible(B, index, S, u)
            if forward_dir and geo.mutation_set(gamma, schedule.axis(u)) != set(S):
                raise CompatibilityFailure(f"u={u}: geometric mutation set differs from nu-transported set")
        for lab in sorted(S):
            k = index[lab]
            for eng in engines.values():
                eng.update(B, k)
            B = mutate_matrix(B, k)
        new = geo.flip_many(gamma, S)
        return new, B

    # forward: Gamma(u) -> Gamma(u+1)
    gamma, B = gamma0, E0.B.copy()
    traj.gammas[0] = gamma0
    saved_values = {name: list(eng.values) for name, eng in engines.items()}
    for u in range(0, hi + 1):
        S = schedule.S(u)
        traj.forward[u] = S
        _record(traj, engines, index, S, u)
        if u == hi:
            break
        new, B = step(gamma, B, S, u, True)
        if check:
            _check_step(traj, gamma, new, B, index, u)
        gamma = new
        if keep_gammas or u + 1 <= 2:
            traj.gammas[u + 1] = gamma

    # backward: Gamma(u+1) -> Gamma(u) by the same (involutive) mutations
    for name, eng in engines.items():
        eng.values = saved_values[name]
    gamma, B = gamma0, E0.B.copy()
    for u in range(-1, lo - 1, -1):
        S = schedule.S(u)
        traj.forward[u] = S
        new, B = step(gamma, B, S, u, False)
        _record(traj, engines, index, S, u)
        if check:
            if geo.mutation_set(new, schedule.axis(u)) != set(S):
                raise CompatibilityFailure(f"u={u}: geometric mutation set differs from nu-transported set")
            _check_step(traj, new, gamma, None, index, u)
        gamma = new
        if keep_gammas:
            traj.gammas[u] = gamma

    if check and keep_gammas:
        rotation_check(traj, raise_on_fail=True)
    return traj


def _check_step(traj: Trajectory, before: geo.LabeledTriangulation, after: geo.LabeledTriangulation,
                B_after: np.ndarray | None, index: dict[Label, int], u: int) -> None:
    axis = traj.schedule.axis(u)
    if geo.reflect(before, axis).arc_set() != after.arc_set():
        raise ReflectionMismatch(f"u={u}: forward mutation is not the reflection across Z(u)")
    if B_after is not None:
        E = geo.exchange_matrix(after)
        if not np.array_equal(E.B, B_after):
            raise CompatibilityFailure(f"u={u + 1}: exchange matrix of the flipped triangulation "
                                       "differs from the mutated matrix")


def rotation_check(traj: Trajectory, raise_on_fail: bool = False) -> bool:
    nu = geo.nu_map(traj.table, traj.kind, 1)
    r2 = traj.table.r2
    for u, g in sorted(traj.gammas.items()):
        if u + 2 not in traj.gammas:
            continue
        want = geo.rotate(geo.relabel(g, nu), r2)
        if want != traj.gammas[u + 2]:
            if raise_on_fail:
                raise RotationMismatch(f"u={u}: Gamma(u+2) != rot(nu(Gamma(u)))")
            return False
    return True


def default_window(table: ContinuedFractionTable, kind: str, periods: int = 2) -> tuple[int, int]:
    """[-2 max p_a, periods * 2r + 2 max p_a]."""
    pad = 2 * max(table.p(a) for a in range(1, table.F + 1))
    return (-pad, periods * 2 * table.r() + pad)


def build_and_run(table: ContinuedFractionTable, kind: str, window: tuple[int, int] | None = None,
                  engines: dict[str, Any] | None = None, **kw) -> Trajectory:
    gamma0 = geo.build(table, kind)
    sched = derive_schedule(gamma0, table, kind)
    return run(gamma0, sched, window or default_window(table, kind), engines, **kw)
