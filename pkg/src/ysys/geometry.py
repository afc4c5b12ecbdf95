"""Labeled triangulations of an r-gon, optionally with one interior puncture.

Vertices are the integers 0..r-1, numbered clockwise starting from the top.

Arc conventions
---------------
* Unpunctured polygon: an arc is ``Arc(i, j, "plain")`` with ``i < j``.
* Punctured polygon: an ordinary arc ``Arc(i, j, "plain")`` is *oriented*:
  together with the boundary path running clockwise from ``i`` to ``j`` it
  bounds a disc that does not contain the puncture.  An arc ending at the
  puncture is ``Arc(v, None, tag)`` with tag ``"plain"`` or ``"notched"``.

Combinatorics of the punctured case are computed by cutting the surface along
one plain arc at the puncture, which yields an ordinary (r+2)-gon.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, Mapping, NamedTuple

import numpy as np

from .contfrac import RSG, SG, ContinuedFractionTable, validate_sequence
from .errors import ClassificationFailure, RejectedInput, UnknownLabel
from .labels import BAR1, BAR2, Label, label_from_json, label_to_json
from .report import Report

PLAIN = "plain"
NOTCHED = "notched"

L, R, NL, NR = "L", "R", "N_L", "N_R"


class Arc(NamedTuple):
    v1: int
    v2: int | None  # None: the arc ends at the puncture
    tag: str = PLAIN

    @property
    def at_puncture(self) -> bool:
        return self.v2 is None


@dataclass(frozen=True)
class Interval:
    a: int
    start: int
    end: int  # start < end, both in 0..r
    kind: str  # L, R, N_L or N_R
    s: int | None = None

    @property
    def width(self) -> int:
        return self.end - self.start

    def to_json(self) -> dict:
        return {"a": self.a, "start": self.start, "end": self.end, "type": self.kind, "s": self.s}


@dataclass(frozen=True)
class Axis:
    """Reflection axis through doubled boundary positions c and c + r (mod 2r)."""

    r: int
    c: int

    @property
    def ends(self) -> tuple[int, int]:
        return (self.c % (2 * self.r), (self.c + self.r) % (2 * self.r))

    def reflect_vertex(self, v: int) -> int:
        return (self.c - v) % self.r


def axis_at(table: ContinuedFractionTable, u: int) -> Axis:
    """Z(u): the axis moves by r2/2 per unit time."""
    r = table.r()
    return Axis(r, (u * table.r2) % (2 * r))


@dataclass(frozen=True, eq=False)
class LabeledTriangulation:
    r: int
    punctured: bool
    arcs: Mapping[Label, Arc]
    intervals: tuple[Interval, ...] = field(default=(), compare=False)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LabeledTriangulation):
            return NotImplemented
        return self.r == other.r and self.punctured == other.punctured and dict(self.arcs) == dict(other.arcs)

    def __hash__(self) -> int:
        return hash((self.r, self.punctured, frozenset(self.arcs.items())))

    @property
    def labels(self) -> list[Label]:
        return sorted(self.arcs)

    def arc_set(self) -> frozenset[Arc]:
        return frozenset(self.arcs.values())

    def label_of(self, arc: Arc) -> Label:
        for lab, a in self.arcs.items():
            if a == arc:
                return lab
        raise KeyError(arc)

    def with_arcs(self, arcs: Mapping[Label, Arc]) -> "LabeledTriangulation":
        return LabeledTriangulation(self.r, self.punctured, dict(arcs), self.intervals)

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "punctured": self.punctured,
            "arcs": [
                {
                    "label": label_to_json(lab),
                    "v1": arc.v1,
                    "v2": "puncture" if arc.v2 is None else arc.v2,
                    "tag": arc.tag,
                }
                for lab, arc in sorted(self.arcs.items())
            ],
            "intervals": [iv.to_json() for iv in self.intervals],
        }

    @classmethod
    def from_json(cls, d: dict) -> "LabeledTriangulation":
        arcs = {}
        for item in d["arcs"]:
            v2 = None if item["v2"] == "puncture" else int(item["v2"])
            arcs[label_from_json(item["label"])] = Arc(int(item["v1"]), v2, item["tag"])
        ivs = tuple(
            Interval(i["a"], i["start"], i["end"], i["type"], i["s"]) for i in d.get("intervals", [])
        )
        return cls(int(d["r"]), bool(d["punctured"]), arcs, ivs)


# ---------------------------------------------------------------------------
# intervals and construction


def _split(start: int, kind: str, n: int, w1: int, w2: int) -> list[tuple[int, int, str]]:
    """Children of an L/R interval: (start, width, type) triples, clockwise."""
    half = n // 2
    if n % 2 == 0:
        left, mid, right = half, (NL if kind == L else NR), half
    elif kind == L:
        left, mid, right = half + 1, NR, half
    else:
        left, mid, right = half, NL, half + 1
    out = []
    pos = start
    for _ in range(left):
        out.append((pos, w1, L))
        pos += w1
    out.append((pos, w2, mid))
    pos += w2
    for _ in range(right):
        out.append((pos, w1, R))
        pos += w1
    return out


def _generations(table: ContinuedFractionTable) -> dict[int, list[Interval]]:
    """Intervals of generations 2..F+1, the last one being the unit edges."""
    F = table.F
    gens: dict[int, list[Interval]] = {}
    # the whole polygon is a first-generation interval of type R
    current = [(0, table.r(), R)]
    for a in range(1, F + 1):
        n_a = table.n_(a)
        nxt: list[tuple[int, int, str]] = []
        for start, width, kind in current:
            if kind in (L, R):
                nxt.extend(_split(start, kind, n_a, table.r(a + 1), table.r(a + 2)))
            else:
                nxt.append((start, width, L if kind == NL else R))
        nxt.sort()
        ivs = []
        s = 0
        for start, width, kind in nxt:
            if kind in (L, R):
                s += 1
                ivs.append(Interval(a + 1, start, start + width, kind, s))
            else:
                ivs.append(Interval(a + 1, start, start + width, kind, None))
        gens[a + 1] = ivs
        current = nxt
    return gens


def interval_tree(table: ContinuedFractionTable) -> dict[int, list[Interval]]:
    gens = _generations(table)
    return {a: gens[a] for a in range(2, table.F + 1)}


def _interval_diagonals(iv: Interval, bounds: list[int], n: int) -> list[tuple[int, int]]:
    """Diagonals (a,1)..(a,n) inside one L/R interval.

    ``bounds`` are the n+2 boundary vertices of the next generation inside the
    interval.  The first diagonal spans the whole interval; each further one
    moves one endpoint inwards, alternating sides, starting on the left for
    type L and on the right for type R.
    """
    lo, hi = 0, len(bounds) - 1
    out = [(bounds[lo], bounds[hi])]
    move_left = iv.kind == L
    for _ in range(n - 1):
        if move_left:
            lo += 1
        else:
            hi -= 1
        move_left = not move_left
        out.append((bounds[lo], bounds[hi]))
    return out


def _first_generation_zigzag(table: ContinuedFractionTable) -> list[tuple[int, int]]:
    n1, r, r2 = table.n_(1), table.r(), table.r2
    if n1 < 3:
        return []
    seq: list[int] = []
    k = 1
    while True:
        seq.append(-k)
        if len(seq) == n1 - 1:
            break
        seq.append(k)
        if len(seq) == n1 - 1:
            break
        k += 1
    verts = [(t * r2) % r for t in seq]
    return [(verts[i], verts[i + 1]) for i in range(len(verts) - 1)]


def _higher_generations(table: ContinuedFractionTable) -> tuple[dict[Label, tuple[int, int]], tuple[Interval, ...]]:
    gens = _generations(table)
    F = table.F
    arcs: dict[Label, tuple[int, int]] = {}
    for a in range(2, F + 1):
        children = gens[a + 1]
        starts = sorted({iv.start for iv in children} | {iv.end for iv in children})
        for iv in gens[a]:
            if iv.kind not in (L, R):
                continue
            bounds = [v for v in starts if iv.start <= v <= iv.end]
            diags = _interval_diagonals(iv, bounds, table.n_(a))
            for m, (x, y) in enumerate(diags, start=1):
                arcs[Label(a, m, iv.s)] = (x, y)
    ivs = tuple(iv for a in range(2, F + 1) for iv in gens[a])
    return arcs, ivs


def build_rsg(table: ContinuedFractionTable) -> LabeledTriangulation:
    validate_sequence(table.n, RSG)
    r = table.r()
    arcs: dict[Label, Arc] = {}
    for m, (x, y) in enumerate(_first_generation_zigzag(table), start=1):
        arcs[Label(1, m)] = Arc(min(x, y), max(x, y))
    higher, ivs = _higher_generations(table)
    for lab, (x, y) in higher.items():
        x, y = x % r, y % r
        arcs[lab] = Arc(min(x, y), max(x, y))
    return LabeledTriangulation(r, False, arcs, ivs)


def build_sg(table: ContinuedFractionTable) -> LabeledTriangulation:
    """Punctured triangulation; the puncture sits in the top triangle.

    The first-generation zigzag arcs keep the puncture on the side of vertex 0.
    The arc (1,0) runs from 0 clockwise-around to -r2 enclosing everything but
    the last interval, and the two tagged arcs (1,1bar) notched and (1,2bar)
    plain join vertex 0 to the puncture.
    """
    validate_sequence(table.n, SG)
    r, r2 = table.r(), table.r2
    arcs: dict[Label, Arc] = {}
    for m, (x, y) in enumerate(_first_generation_zigzag(table), start=1):
        arcs[Label(1, m)] = Arc(min(x, y), max(x, y))
    arcs[Label(1, 0)] = Arc(0, (-r2) % r)
    arcs[Label(1, BAR1)] = Arc(0, None, NOTCHED)
    arcs[Label(1, BAR2)] = Arc(0, None, PLAIN)
    higher, ivs = _higher_generations(table)
    for lab, (x, y) in higher.items():
        # interval chords never wrap past vertex 0 except at their end point
        arcs[lab] = Arc(x % r, y % r)
    return LabeledTriangulation(r, True, arcs, ivs)


def build(table: ContinuedFractionTable, kind: str) -> LabeledTriangulation:
    if kind == RSG:
        return build_rsg(table)
    if kind == SG:
        return build_sg(table)
    raise RejectedInput(f"unknown system kind {kind!r}")


# ---------------------------------------------------------------------------
# compatibility


def _seg_len(r: int, i: int, j: int) -> int:
    return (j - i) % r


def _strictly_inside(r: int, i: int, j: int, v: int) -> bool:
    d = (v - i) % r
    return 0 < d < _seg_len(r, i, j)


def _seg_contains(r: int, outer: tuple[int, int], inner: tuple[int, int]) -> bool:
    d = (inner[0] - outer[0]) % r
    return d + _seg_len(r, *inner) <= _seg_len(r, *outer)


def compatible(r: int, punctured: bool, x: Arc, y: Arc) -> bool:
    if x == y:
        return True
    if not punctured:
        i, j = x.v1, x.v2
        k, l = y.v1, y.v2
        a = i < k < j
        b = i < l < j
        if k in (i, j) or l in (i, j):
            return True
        return a == b
    if x.at_puncture and y.at_puncture:
        return x.tag == y.tag or x.v1 == y.v1
    if x.at_puncture or y.at_puncture:
        p, o = (x, y) if x.at_puncture else (y, x)
        return not _strictly_inside(r, o.v1, o.v2, p.v1)
    sx, sy = (x.v1, x.v2), (y.v1, y.v2)
    if _seg_contains(r, sx, sy) or _seg_contains(r, sy, sx):
        return True
    comp = (x.v2, x.v1)  # closure of the complement of sx
    return _seg_contains(r, comp, sy)


def is_triangulation(tri: LabeledTriangulation) -> bool:
    arcs = list(tri.arcs.values())
    r = tri.r
    want = r if tri.punctured else r - 3
    if len(arcs) != want or len(set(arcs)) != len(arcs):
        return False
    for arc in arcs:
        if arc.at_puncture:
            if not (tri.punctured and 0 <= arc.v1 < r and arc.tag in (PLAIN, NOTCHED)):
                return False
        elif tri.punctured:
            if arc.v1 == arc.v2 or _seg_len(r, arc.v1, arc.v2) < 2:
                return False
        else:
            if not (0 <= arc.v1 < arc.v2 < r) or arc.v2 - arc.v1 < 2 or (arc.v1 == 0 and arc.v2 == r - 1):
                return False
    for i in range(len(arcs)):
        for j in range(i + 1, len(arcs)):
            if not compatible(r, tri.punctured, arcs[i], arcs[j]):
                return False
    return True


# ---------------------------------------------------------------------------
# combinatorial model: an ordinary polygon with labeled chords


@dataclass
class _Model:
    N: int  # number of polygon vertices
    chords: dict[tuple[int, int], Label]
    edge_labels: dict[tuple[int, int], Label]  # boundary edges that carry a label
    skip: tuple[int, int, int] | None = None  # self-folded triangle
    loop: Label | None = None
    radius: Label | None = None
    cut_vertex: int = 0
    tag: str = PLAIN  # common tag of the puncture arcs (after normalisation)
    r: int = 0

    def vertex(self, k: int) -> int | None:
        """Original vertex of a model vertex (None for the puncture)."""
        if k == self.N - 1 and self.radius is not None:
            return None
        return (self.cut_vertex + k) % self.r

    def neighbours(self) -> list[set[int]]:
        nb = [set() for _ in range(self.N)]
        for k in range(self.N):
            nb[k].add((k + 1) % self.N)
            nb[(k + 1) % self.N].add(k)
        for x, y in self.chords:
            nb[x].add(y)
            nb[y].add(x)
        return nb

    def triangles(self) -> list[tuple[int, int, int]]:
        nb = self.neighbours()
        tris = set()
        for x, y in self.chords:
            for z in nb[x] & nb[y]:
                tris.add(tuple(sorted((x, y, z))))
        if not self.chords and self.N == 3:
            tris.add((0, 1, 2))
        return sorted(tris)

    def side_label(self, x: int, y: int) -> Label | None:
        key = (min(x, y), max(x, y))
        if key in self.chords:
            return self.chords[key]
        return self.edge_labels.get(key)


def _model(tri: LabeledTriangulation, avoid: Label | None = None) -> _Model:
    r = tri.r
    if not tri.punctured:
        chords = {(arc.v1, arc.v2): lab for lab, arc in tri.arcs.items()}
        return _Model(r, chords, {}, r=r)
    punct = {lab: arc for lab, arc in tri.arcs.items() if arc.at_puncture}
    tags = {arc.tag for arc in punct.values()}
    loop = None
    if len(tags) == 2:
        # a plain/notched pair at one vertex
        radius = next(lab for lab, arc in punct.items() if arc.tag == PLAIN)
        loop = next(lab for lab, arc in punct.items() if arc.tag == NOTCHED)
        tag = PLAIN
    else:
        tag = tags.pop()
        choices = sorted(lab for lab in punct if lab != avoid) or sorted(punct)
        radius = choices[0]
    v = punct[radius].v1
    N = r + 2
    P = r + 1

    def idx(w: int, as_end: bool) -> int:
        if w == v:
            return r if as_end else 0
        return (w - v) % r

    chords: dict[tuple[int, int], Label] = {}
    for lab, arc in tri.arcs.items():
        if lab == radius:
            continue
        if lab == loop:
            chords[(0, r)] = lab
        elif arc.at_puncture:
            chords[(idx(arc.v1, False), P)] = lab
        else:
            x, y = idx(arc.v1, False), idx(arc.v2, True)
            if not x < y:
                raise ValueError(f"arc {arc} crosses the cut at vertex {v}")
            chords[(x, y)] = lab
    edges = {(r, P): radius, (0, P): radius}
    skip = (0, r, P) if loop is not None else None
    return _Model(N, chords, edges, skip, loop, radius, v, tag, r)


@dataclass(frozen=True)
class ExchangeMatrix:
    labels: tuple[Label, ...]
    B: np.ndarray

    def index(self) -> dict[Label, int]:
        return {lab: i for i, lab in enumerate(self.labels)}

    def entry(self, i: Label, j: Label) -> int:
        idx = self.index()
        return int(self.B[idx[i], idx[j]])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ExchangeMatrix):
            return NotImplemented
        return self.labels == other.labels and np.array_equal(self.B, other.B)

    def arrows(self) -> set[tuple[Label, Label]]:
        """Pairs (i, j) with b_ij > 0 (an arrow i -> j)."""
        out = set()
        for x, i in enumerate(self.labels):
            for y, j in enumerate(self.labels):
                if self.B[x, y] > 0:
                    out.add((i, j))
        return out


def exchange_matrix(tri: LabeledTriangulation) -> ExchangeMatrix:
    """b_ij = 1 when j follows i clockwise among the sides of a triangle.

    Equivalently j follows i anticlockwise when rotating about their common
    vertex.  Arcs at the puncture forming a plain/notched pair both receive the
    adjacency of the loop that encloses them.
    """
    labels = tuple(sorted(tri.arcs))
    index = {lab: i for i, lab in enumerate(labels)}
    n = len(labels)
    B = np.zeros((n, n), dtype=np.int64)
    model = _model(tri)
    for t in model.triangles():
        if t == model.skip:
            continue
        x, y, z = t
        sides = [model.side_label(x, y), model.side_label(y, z), model.side_label(z, x)]
        for s in range(3):
            i, j = sides[s], sides[(s + 1) % 3]
            if i is not None and j is not None and i != j:
                B[index[i], index[j]] += 1
                B[index[j], index[i]] -= 1
    if model.loop is not None:
        li, ri = index[model.loop], index[model.radius]
        B[ri, :] = B[li, :]
        B[:, ri] = B[:, li]
        B[ri, li] = B[li, ri] = 0
        B[ri, ri] = 0
    return ExchangeMatrix(labels, B)


# ---------------------------------------------------------------------------
# flips and symmetries


def _toggle(tag: str) -> str:
    return NOTCHED if tag == PLAIN else PLAIN


def _flip_chord(model: _Model, x: int, y: int) -> tuple[int, int]:
    nb = model.neighbours()
    apex = sorted(nb[x] & nb[y])
    tris = [z for z in apex if tuple(sorted((x, y, z))) != model.skip]
    if len(tris) != 2:
        raise ValueError(f"chord ({x},{y}) is not flippable")
    a, b = tris
    return (min(a, b), max(a, b))


def flip(tri: LabeledTriangulation, label: Label) -> LabeledTriangulation:
    if label not in tri.arcs:
        raise UnknownLabel(label)
    arc = tri.arcs[label]
    arcs = dict(tri.arcs)
    if not tri.punctured:
        model = _model(tri)
        a, b = _flip_chord(model, arc.v1, arc.v2)
        arcs[label] = Arc(a, b)
        return tri.with_arcs(arcs)

    punct = {lab: a for lab, a in tri.arcs.items() if a.at_puncture}
    if arc.at_puncture and len(punct) == 2:
        other = next(a for lab, a in punct.items() if lab != label)
        if other.v1 != arc.v1:
            arcs[label] = Arc(other.v1, None, _toggle(arc.tag))
        else:
            model = _model(tri)
            k = _flip_chord_apex_of_loop(model)
            arcs[label] = Arc(model.vertex(k), None, _toggle(arc.tag))
        return tri.with_arcs(arcs)

    model = _model(tri, avoid=label if arc.at_puncture else None)
    key = next(k for k, lab in model.chords.items() if lab == label)
    a, b = _flip_chord(model, *key)
    P = model.N - 1
    if b == P:
        arcs[label] = Arc(model.vertex(a), None, model.tag)
    else:
        arcs[label] = Arc(model.vertex(a), model.vertex(b))
    return tri.with_arcs(arcs)


def quadrilateral(tri: LabeledTriangulation, label: Label) -> tuple[int, int, int, int]:
    """Corners (x, c1, y, c2) of the quadrilateral around an unpunctured diagonal.

    (x, y) is the diagonal with x < y, c1 lies strictly between them
    clockwise and c2 on the other side.
    """
    if tri.punctured:
        raise ValueError("quadrilaterals are only read off unpunctured triangulations")
    arc = tri.arcs[label]
    x, y = sorted((arc.v1, arc.v2))
    nb = _model(tri).neighbours()
    apex = sorted(nb[x] & nb[y])
    inside = [v for v in apex if x < v < y]
    outside = [v for v in apex if not x < v < y]
    if len(inside) != 1 or len(outside) != 1:
        raise ValueError(f"diagonal {label} is not surrounded by a quadrilateral")
    return x, inside[0], y, outside[0]


def _flip_chord_apex_of_loop(model: _Model) -> int:
    nb = model.neighbours()
    r = model.N - 2
    apex = [z for z in nb[0] & nb[r] if z != model.N - 1]
    if len(apex) != 1:
        raise ValueError("malformed self-folded triangle")
    return apex[0]


def flip_many(tri: LabeledTriangulation, labels: Iterable[Label]) -> LabeledTriangulation:
    for lab in sorted(labels):
        tri = flip(tri, lab)
    return tri


def _map_arc(r: int, punctured: bool, arc: Arc, f, reverse: bool) -> Arc:
    if arc.at_puncture:
        return Arc(f(arc.v1), None, arc.tag)
    a, b = f(arc.v1), f(arc.v2)
    if not punctured:
        return Arc(min(a, b), max(a, b), arc.tag)
    return Arc(b, a, arc.tag) if reverse else Arc(a, b, arc.tag)


def rotate(tri: LabeledTriangulation, k: int) -> LabeledTriangulation:
    """Clockwise rotation by k units."""
    r = tri.r
    f = lambda v: (v + k) % r  # noqa: E731
    return tri.with_arcs({lab: _map_arc(r, tri.punctured, a, f, False) for lab, a in tri.arcs.items()})


def reflect_arc(tri: LabeledTriangulation, arc: Arc, axis: Axis) -> Arc:
    return _map_arc(tri.r, tri.punctured, arc, axis.reflect_vertex, True)


def reflect(tri: LabeledTriangulation, axis: Axis) -> LabeledTriangulation:
    return tri.with_arcs({lab: reflect_arc(tri, a, axis) for lab, a in tri.arcs.items()})


def relabel(tri: LabeledTriangulation, mapping) -> LabeledTriangulation:
    """Apply a label map (callable or dict); the arc set is unchanged."""
    f = mapping if callable(mapping) else mapping.__getitem__
    return tri.with_arcs({f(lab): a for lab, a in tri.arcs.items()})


def nu_map(table: ContinuedFractionTable, kind: str, power: int = 1):
    """(a,m)_s -> (a,m)_{s + power * p2_a}; for SG also swaps 1bar and 2bar per step."""

    def f(lab: Label) -> Label:
        a, m, s = lab
        if a >= 2:
            pa = table.p(a)
            return Label(a, m, (s - 1 + power * table.p(a, 2)) % pa + 1)
        if kind == SG and power % 2 and m in (BAR1, BAR2):
            return Label(1, BAR2 if m == BAR1 else BAR1)
        return lab

    return f


def crosses_axis(tri: LabeledTriangulation, arc: Arc, axis: Axis) -> bool:
    """Does the arc meet the axis away from its own endpoints?

    Arcs at the puncture always meet the axes, which pass through it.
    """
    if arc.at_puncture:
        return True
    r2 = 2 * tri.r
    i, j = 2 * arc.v1, 2 * arc.v2
    e1, e2 = axis.ends

    def inside(e: int) -> bool:
        d = (e - i) % r2
        return 0 < d < (j - i) % r2

    if tri.punctured:
        return inside(e1) or inside(e2)
    if e1 in (i % r2, j % r2) or e2 in (i % r2, j % r2):
        return False
    return inside(e1) != inside(e2)


def symmetric(tri: LabeledTriangulation, arc: Arc, axis: Axis) -> bool:
    return reflect_arc(tri, arc, axis) == arc


def quasi_symmetry_check(tri: LabeledTriangulation, axis: Axis) -> bool:
    arcs = tri.arc_set()
    for arc in arcs:
        if crosses_axis(tri, arc, axis):
            continue
        if reflect_arc(tri, arc, axis) not in arcs:
            return False
    return True


def mutation_set(tri: LabeledTriangulation, axis: Axis) -> set[Label]:
    """Labels whose arcs meet the axis and are not symmetric with respect to it."""
    return {
        lab
        for lab, arc in tri.arcs.items()
        if crosses_axis(tri, arc, axis) and not symmetric(tri, arc, axis)
    }


# ---------------------------------------------------------------------------
# trinity diagnostics


TRINITY_NAMES = {1: "(i)", 2: "(ii)", 3: "(iii)"}


def _classify(ivs: list[Interval], point: int, r: int) -> list[tuple[int, str]]:
    """All ways the doubled position ``point`` is a midpoint of an interval or joint."""
    out = []
    mod = 2 * r
    for iv in ivs:
        if (iv.start + iv.end - point) % mod == 0:
            out.append((1 if iv.kind in (NL, NR) else 2, iv.kind))
    for x, y in zip(ivs, ivs[1:]):
        if (x.kind, y.kind) in ((L, NR), (NL, R)) and (x.start + y.end - point) % mod == 0:
            out.append((3, f"({x.kind},{y.kind})"))
    return out


def trinity(table: ContinuedFractionTable) -> dict[int, dict[str, tuple[int, str]]]:
    """Classify Q(0), P(-1), Q(-1) at each generation 2..F."""
    r, r2 = table.r(), table.r2
    points = {"Q(0)": r, "P(-1)": (-r2) % (2 * r), "Q(-1)": (-r - r2) % (2 * r)}
    tree = interval_tree(table)
    out = {}
    for a, ivs in tree.items():
        row = {}
        for name, pt in points.items():
            found = _classify(ivs, pt, r)
            if len(found) != 1:
                raise ClassificationFailure(f"generation {a}: {name} classified as {found}")
            row[name] = found[0]
        if sorted(c for c, _ in row.values()) != [1, 2, 3]:
            raise ClassificationFailure(f"generation {a}: cases {row} are not a bijection")
        out[a] = row
    return out


_NEXT_EVEN = {NR: R, NL: L, L: NL, R: NR, "(L,N_R)": "(N_L,R)", "(N_L,R)": "(L,N_R)"}
_NEXT_ODD = {NR: R, NL: L, L: "(L,N_R)", R: "(N_L,R)", "(L,N_R)": NR, "(N_L,R)": NL}


def type_change_check(table: ContinuedFractionTable) -> Report:
    rep = Report("type change")
    tri = trinity(table)
    for a in range(2, table.F):
        table_ = _NEXT_EVEN if table.n_(a) % 2 == 0 else _NEXT_ODD
        for name, (_, t) in tri[a].items():
            want = table_[t]
            got = tri[a + 1][name][1]
            rep.add(f"{name} a={a}->{a + 1}", got == want, f"{t} -> {got}, expected {want}")
    return rep


def interval_report(table: ContinuedFractionTable) -> Report:
    """Widths and counts of the interval tree."""
    rep = Report("intervals")
    tree = interval_tree(table)
    for a, ivs in tree.items():
        lr = [iv for iv in ivs if iv.kind in (L, R)]
        nn = [iv for iv in ivs if iv.kind in (NL, NR)]
        rep.add(f"L/R count a={a}", len(lr) == table.p(a), f"{len(lr)}")
        rep.add(f"N count a={a}", len(nn) == table.p(a - 1), f"{len(nn)}")
        rep.add(f"L/R widths a={a}", all(iv.width == table.r(a) for iv in lr))
        rep.add(f"N widths a={a}", all(iv.width == table.r(a + 1) for iv in nn))
        rep.add(f"cover a={a}", sum(iv.width for iv in ivs) == table.r())
    return rep


def polygon_invariants(table: ContinuedFractionTable) -> Report:
    rep = Report("polygon")
    rep.add("gcd(r, r2) = 1", gcd(table.r(), table.r2) == 1)
    return rep
