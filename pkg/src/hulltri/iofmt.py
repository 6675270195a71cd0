"""Point ingestion, seeded generation, and deterministic output emitters.

All emitters produce canonically ordered text so identical input yields
byte-identical output across runs and platforms.  Coordinates are written
with shortest round-trip float formatting, so emitting and re-ingesting
points is lossless.
"""

from __future__ import annotations

import random
from typing import Sequence, TextIO

from .delaunay import TriangulationMap
from .geometry import GeometryError, Point2
from .hull import HullChain, PointSet

__all__ = [
    "ParseError",
    "ingest",
    "parse_points",
    "format_points",
    "generate_uniform",
    "emit_edges",
    "emit_triangles",
    "emit_off",
    "emit_svg",
]


class ParseError(GeometryError):
    """A point file line could not be parsed; carries the line number."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


def parse_points(text: str) -> list[Point2]:
    """Parse one point per line, ``x,y`` or ``x y``; ``#`` starts a comment."""
    from .geometry import NonFiniteCoordinate, is_finite_point

    points: list[Point2] = []
    for line_no, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split(",") if "," in line else line.split()
        if len(parts) != 2:
            raise ParseError(line_no, f"expected two coordinates, got {raw_line!r}")
        try:
            p = Point2(float(parts[0]), float(parts[1]))
        except ValueError:
            raise ParseError(line_no, f"bad number in {raw_line!r}") from None
        if not is_finite_point(p):
            raise NonFiniteCoordinate(f"line {line_no}: non-finite point {p!r}")
        points.append(p)
    return points


def ingest(path) -> list[Point2]:
    """Read a point file from disk."""
    with open(path, "r", encoding="utf-8") as fh:
        return parse_points(fh.read())


def format_points(points: Sequence[Point2], header: str = "") -> str:
    """Point file text; floats use shortest round-trip representation."""
    lines = []
    if header:
        lines.append(f"# {header}")
    lines.extend(f"{p[0]!r},{p[1]!r}" for p in points)
    return "\n".join(lines) + "\n"


def generate_uniform(n: int, seed: int) -> list[Point2]:
    """n seeded points uniform in the unit square."""
    rng = random.Random(seed)
    return [Point2(rng.random(), rng.random()) for _ in range(n)]


def _original_triples(tri: TriangulationMap, ps: PointSet | None):
    remap = ps.original_index if ps is not None else None
    triples = []
    for (u, v, w) in tri.triangles():
        if remap is not None:
            u, v, w = remap[u], remap[v], remap[w]
        triples.append(tuple(sorted((u, v, w))))
    triples.sort()
    return triples


def _original_pairs(tri: TriangulationMap, ps: PointSet | None):
    remap = ps.original_index if ps is not None else None
    pairs = []
    for (u, v) in tri.edges:
        if remap is not None:
            u, v = remap[u], remap[v]
        pairs.append((u, v) if u < v else (v, u))
    pairs.sort()
    return pairs


def emit_triangles(tri: TriangulationMap, ps: PointSet | None = None) -> str:
    """One triangle per line ``i j k`` (ascending), lines sorted.

    Indices refer to original input positions when a PointSet is supplied,
    otherwise to sorted order.
    """
    lines = [f"{u} {v} {w}" for (u, v, w) in _original_triples(tri, ps)]
    return "\n".join(lines) + ("\n" if lines else "")


def emit_edges(tri: TriangulationMap, ps: PointSet | None = None) -> str:
    """One edge per line ``i j`` (ascending), lines sorted."""
    lines = [f"{u} {v}" for (u, v) in _original_pairs(tri, ps)]
    return "\n".join(lines) + ("\n" if lines else "")


def emit_off(ps: PointSet, tri: TriangulationMap) -> str:
    """OFF mesh: 2D points lifted to z=0, faces in canonical order.

    Vertices appear in original input order (of the retained, de-duplicated
    points); faces index that list.
    """
    order = sorted(range(len(ps.points)), key=lambda i: ps.original_index[i])
    off_pos = {sorted_idx: off_idx for off_idx, sorted_idx in enumerate(order)}
    faces = sorted(tuple(sorted((off_pos[u], off_pos[v], off_pos[w])))
                   for (u, v, w) in tri.triangles())
    lines = ["OFF", f"{len(order)} {len(faces)} {tri.edge_count()}"]
    lines.extend(f"{ps.points[i][0]!r} {ps.points[i][1]!r} 0.0" for i in order)
    lines.extend(f"3 {a} {b} {c}" for (a, b, c) in faces)
    return "\n".join(lines) + "\n"


def emit_svg(ps: PointSet, tri: TriangulationMap, hull: HullChain) -> str:
    """SVG rendering: every edge as a line, the hull as one path, points as
    circles.  The viewBox fits the bounding box with a 5% margin and the
    y axis is flipped so larger y is drawn higher."""
    pts = ps.points
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    x0, x1 = min(xs), max(xs)
    y0, y1 = min(ys), max(ys)
    extent = max(x1 - x0, y1 - y0) or 1.0
    margin = 0.05 * extent
    x0 -= margin
    x1 += margin
    y0 -= margin
    y1 += margin

    def fx(x: float) -> float:
        return x

    def fy(y: float) -> float:
        return y0 + y1 - y

    stroke = extent / 200.0
    radius = extent / 150.0
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" '
        f'viewBox="{x0!r} {y0!r} {(x1 - x0)!r} {(y1 - y0)!r}">',
        f'<g class="edges" stroke="#555555" stroke-width="{stroke!r}" '
        f'stroke-linecap="round">',
    ]
    for (u, v) in sorted(tri.edges):
        a, b = pts[u], pts[v]
        parts.append(f'<line x1="{fx(a[0])!r}" y1="{fy(a[1])!r}" '
                     f'x2="{fx(b[0])!r}" y2="{fy(b[1])!r}"/>')
    parts.append("</g>")
    chain = hull.indices
    if chain:
        d = " ".join(
            f"{'M' if i == 0 else 'L'}{fx(pts[idx][0])!r} {fy(pts[idx][1])!r}"
            for i, idx in enumerate(chain)) + " Z"
        parts.append(f'<path class="hull" d="{d}" fill="none" '
                     f'stroke="#cc2200" stroke-width="{(1.8 * stroke)!r}"/>')
    parts.append('<g class="points" fill="#0055cc">')
    for p in pts:
        parts.append(f'<circle cx="{fx(p[0])!r}" cy="{fy(p[1])!r}" r="{radius!r}"/>')
    parts.append("</g>")
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
