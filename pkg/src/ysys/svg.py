"""Deterministic SVG drawings of labeled triangulations.

Vertex v sits at angle 2*pi*v/r clockwise from the top.  The puncture (if
any) is drawn inside the region of the triangulation that contains it;
ordinary arcs whose straight chord would leave the puncture on the wrong side
are bent around it.  Optional axes are dashed; arcs of S(0) get a circle and
arcs of S(-1) a cross at their midpoint.
"""
from __future__ import annotations

import math
from typing import Iterable

from . import geometry as geo
from .labels import Label

SIZE = 640
R = 280.0
C = SIZE / 2


def _pt(r: int, pos: float) -> tuple[float, float]:
    phi = 2 * math.pi * pos / r
    return (C + R * math.sin(phi), C - R * math.cos(phi))


def _fmt(x: float) -> str:
    return f"{x:.2f}"


def _puncture_point(tri: geo.LabeledTriangulation) -> tuple[float, float]:
    """A point inside the region of the triangulation that holds the puncture."""
    if not tri.punctured:
        return (C, C)
    model = geo._model(tri)
    P = model.N - 1
    verts = {model.vertex(k) for t in model.triangles() if P in t and t != model.skip for k in t if k != P}
    if model.loop is not None:
        verts |= {model.vertex(0), model.vertex(geo._flip_chord_apex_of_loop(model))}
    pts = [_pt(tri.r, v) for v in sorted(verts)]
    x = sum(p[0] for p in pts) / len(pts)
    y = sum(p[1] for p in pts) / len(pts)
    if len(pts) < 3:
        x, y = 0.85 * x + 0.15 * C, 0.85 * y + 0.15 * C
    return (x, y)


def _side(p, q, s) -> float:
    return (q[0] - p[0]) * (s[1] - p[1]) - (q[1] - p[1]) * (s[0] - p[0])


def _arc_path(tri: geo.LabeledTriangulation, arc: geo.Arc, P) -> tuple[str, tuple[float, float]]:
    r = tri.r
    if arc.at_puncture:
        a = _pt(r, arc.v1)
        mid = ((a[0] + P[0]) / 2, (a[1] + P[1]) / 2)
        return f"M {_fmt(a[0])} {_fmt(a[1])} L {_fmt(P[0])} {_fmt(P[1])}", mid
    a, b = _pt(r, arc.v1), _pt(r, arc.v2)
    if tri.punctured:
        # the clockwise boundary path from v1 to v2 must not see the puncture
        span = (arc.v2 - arc.v1) % r
        inner = _pt(r, arc.v1 + span / 2)
        if _side(a, b, inner) * _side(a, b, P) > 0 or _side(a, b, P) == 0:
            # bend the arc so it passes between the puncture and the clockwise path
            d = (inner[0] - P[0], inner[1] - P[1])
            norm = math.hypot(*d) or 1.0
            target = (P[0] + 0.04 * R * d[0] / norm, P[1] + 0.04 * R * d[1] / norm)
            ctrl = (2 * target[0] - (a[0] + b[0]) / 2, 2 * target[1] - (a[1] + b[1]) / 2)
            return (f"M {_fmt(a[0])} {_fmt(a[1])} Q {_fmt(ctrl[0])} {_fmt(ctrl[1])} "
                    f"{_fmt(b[0])} {_fmt(b[1])}"), target
    mid = ((a[0] + b[0]) / 2, (a[1] + b[1]) / 2)
    return f"M {_fmt(a[0])} {_fmt(a[1])} L {_fmt(b[0])} {_fmt(b[1])}", mid


def render(tri: geo.LabeledTriangulation, *, axes: Iterable[geo.Axis] = (), circles: Iterable[Label] = (),
           crosses: Iterable[Label] = (), title: str | None = None, show_labels: bool | None = None) -> str:
    r = tri.r
    circles, crosses = set(circles), set(crosses)
    show_labels = r <= 40 if show_labels is None else show_labels
    P = _puncture_point(tri)
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE + 30}" '
           f'viewBox="0 0 {SIZE} {SIZE + 30}">',
           '<rect width="100%" height="100%" fill="white"/>']
    poly = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in (_pt(r, v) for v in range(r)))
    out.append(f'<polygon points="{poly}" fill="none" stroke="black" stroke-width="1.5"/>')
    for axis in axes:
        e1, e2 = axis.ends
        a, b = _pt(r, e1 / 2), _pt(r, e2 / 2)
        out.append(f'<line x1="{_fmt(a[0])}" y1="{_fmt(a[1])}" x2="{_fmt(b[0])}" y2="{_fmt(b[1])}" '
                   'stroke="gray" stroke-dasharray="6,4" stroke-width="1"/>')
    marks = []
    for lab in sorted(tri.arcs):
        arc = tri.arcs[lab]
        d, mid = _arc_path(tri, arc, P)
        dash = ' stroke-dasharray="3,2"' if arc.tag == geo.NOTCHED else ""
        out.append(f'<path d="{d}" fill="none" stroke="#1f4e9e" stroke-width="1"{dash}/>')
        if lab in circles:
            marks.append(f'<circle cx="{_fmt(mid[0])}" cy="{_fmt(mid[1])}" r="4" fill="none" stroke="red"/>')
        if lab in crosses:
            x, y = mid
            marks.append(f'<path d="M {_fmt(x - 4)} {_fmt(y - 4)} L {_fmt(x + 4)} {_fmt(y + 4)} '
                         f'M {_fmt(x - 4)} {_fmt(y + 4)} L {_fmt(x + 4)} {_fmt(y - 4)}" stroke="green"/>')
        if show_labels:
            marks.append(f'<text x="{_fmt(mid[0] + 3)}" y="{_fmt(mid[1] - 3)}" font-size="9">{lab}</text>')
    out.extend(marks)
    if tri.punctured:
        out.append(f'<circle cx="{_fmt(P[0])}" cy="{_fmt(P[1])}" r="3" fill="black"/>')
    if r <= 60:
        for v in range(r):
            x, y = _pt(r, v)
            lx, ly = C + (x - C) * 1.06, C + (y - C) * 1.06
            out.append(f'<text x="{_fmt(lx)}" y="{_fmt(ly)}" font-size="9" text-anchor="middle">{v}</text>')
    if title:
        out.append(f'<text x="{C}" y="{SIZE + 20}" font-size="14" text-anchor="middle">{title}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
