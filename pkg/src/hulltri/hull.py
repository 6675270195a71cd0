"""Sorted incremental convex hull with exact orientation-test accounting.

Points are sorted lexicographically, so every point is inserted strictly
outside the current hull.  Each insertion probes from the previously
inserted (rightmost) vertex: clockwise for the lower tangent, then
counterclockwise for the upper tangent, replacing the boundary arc between
them with the new point.

Boundary vertices that are collinear with their neighbours are kept on the
chain.  The triangulation layer relies on that: a point lying on a hull
edge still needs triangles, so the walks stop at the first edge that is
not *strictly* visible from the new point.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

from .geometry import (
    AllCollinear,
    EmptyInput,
    GeometryError,
    NonFiniteCoordinate,
    OpCounters,
    Point2,
    cross,
    is_finite_point,
)

__all__ = [
    "PointSet",
    "HullChain",
    "TangentPair",
    "sort_points",
    "build_initial_triangle",
    "find_tangents",
    "add_point_to_hull",
    "convex_hull",
    "convex_hull_sorted",
]


@dataclass
class PointSet:
    """Lexicographically sorted, de-duplicated points.

    ``original_index[i]`` is the position in the raw input of sorted point
    ``i`` (the first occurrence, for collapsed duplicates).
    """

    points: list[Point2]
    original_index: list[int]

    def __len__(self) -> int:
        return len(self.points)


@dataclass
class HullChain:
    """Counterclockwise cyclic list of point indices forming the hull.

    ``i_xmax`` is the chain position of the most recently inserted point,
    which is the lexicographic maximum of the points seen so far; tangent
    searches start there.  ``degenerate`` marks a collinear input collapsed
    to its two extremes (or fewer than three points).
    """

    indices: list[int]
    i_xmax: int
    degenerate: bool = False

    def __len__(self) -> int:
        return len(self.indices)


class TangentPair(NamedTuple):
    """Chain positions of the lower (a1) and upper (a2) tangent vertices."""

    a1: int
    a2: int


def sort_points(raw: Sequence) -> PointSet:
    """Validate, sort lexicographically, and collapse exact duplicates."""
    if raw is None or len(raw) == 0:
        raise EmptyInput("need at least one input point")
    coerced = []
    for i, p in enumerate(raw):
        q = Point2(float(p[0]), float(p[1]))
        if not is_finite_point(q):
            raise NonFiniteCoordinate(f"point {i} is not finite: {q!r}")
        coerced.append(q)
    order = sorted(range(len(coerced)), key=lambda i: (coerced[i], i))
    points: list[Point2] = []
    original: list[int] = []
    for i in order:
        if points and points[-1] == coerced[i]:
            continue
        points.append(coerced[i])
        original.append(i)
    return PointSet(points, original)


def build_initial_triangle(ps: PointSet,
                           counters: OpCounters | None = None
                           ) -> tuple[HullChain, int]:
    """Consume the shortest sorted prefix that spans a proper triangle.

    The first k1-1 points are collinear and point k1-1 lies off their
    line; exactly k1-2 orientation tests are spent discovering that.  All
    k1 points stay on the returned chain (the collinear run forms one
    boundary stretch), oriented counterclockwise.
    """
    cnt = counters if counters is not None else OpCounters()
    pts = ps.points
    n = len(pts)
    if n < 3:
        raise AllCollinear(f"need at least 3 points, got {n}")
    i = 2
    side = 0.0
    while i < n:
        cnt.to_left_calls += 1
        side = cross(pts[0], pts[i - 1], pts[i])
        if side != 0.0:
            break
        i += 1
    else:
        raise AllCollinear("all input points lie on one line")
    k1 = i + 1
    run = list(range(k1 - 1))
    if side < 0.0:
        run.reverse()
    chain = run + [k1 - 1]
    cnt.k1 = k1
    return HullChain(chain, len(chain) - 1), k1


def _tangent_walk(pts, chain: list[int], i_xmax: int, p,
                  cnt: OpCounters) -> tuple[int, int]:
    """Locate the lower (a1) and upper (a2) tangent chain positions for p.

    p must be lexicographically greater than every chain point.  Walk
    conditions are strict: an edge collinear with p stops the walk, so the
    nearer collinear vertex becomes the tangent and stays on the chain.
    Returned positions may be negative (cyclic); callers normalise.
    """
    size = len(chain)
    a1 = i_xmax
    cnt.to_left_calls += 1
    if cross(pts[chain[a1 - 1]], pts[chain[a1]], p) >= 0.0:
        a2 = a1 - size + 1
    else:
        # The edge into the previous extreme point is strictly visible, so
        # that point is not the lower tangent: walk clockwise past it.
        cnt.h += 1
        a2 = a1 - size
        steps = 0
        while True:
            a1 -= 1
            cnt.to_left_calls += 1
            if cross(pts[chain[a1 - 1]], pts[chain[a1]], p) >= 0.0:
                break
            steps += 1
            if steps > size:
                raise GeometryError("lower tangent walk did not terminate")
    steps = 0
    while True:
        cnt.to_left_calls += 1
        if cross(pts[chain[a2]], pts[chain[a2 + 1]], p) >= 0.0:
            break
        a2 += 1
        steps += 1
        if steps > size:
            raise GeometryError("upper tangent walk did not terminate")
    return a1, a2


def _splice(chain: list[int], a1: int, a2: int,
            p_index: int) -> tuple[list[int], int]:
    """Replace the arc strictly between the tangents with the new point.

    Survivors run counterclockwise from the upper tangent a2 around the
    far side to the lower tangent a1; the new point is appended after a1,
    so its position is always the last one.  Rebuilding cyclically avoids
    the corner cases of slice-based updates when a walk wraps the list
    origin.
    """
    size = len(chain)
    take = (a1 - a2) % size + 1
    new = [chain[(a2 + t) % size] for t in range(take)]
    new.append(p_index)
    return new, len(new) - 1


def find_tangents(points: Sequence[Point2], hull: HullChain, p,
                  counters: OpCounters | None = None) -> TangentPair:
    """Tangent chain positions for an outside point p (lexicographic max)."""
    cnt = counters if counters is not None else OpCounters()
    a1, a2 = _tangent_walk(points, hull.indices, hull.i_xmax, p, cnt)
    size = len(hull.indices)
    return TangentPair(a1 % size, a2 % size)


def add_point_to_hull(points: Sequence[Point2], hull: HullChain,
                      p_index: int,
                      counters: OpCounters | None = None) -> HullChain:
    """Insert point ``p_index`` (lexicographically beyond the hull)."""
    cnt = counters if counters is not None else OpCounters()
    chain = hull.indices
    a1, a2 = _tangent_walk(points, chain, hull.i_xmax, points[p_index], cnt)
    size = len(chain)
    new, i_xmax = _splice(chain, a1 % size, a2 % size, p_index)
    return HullChain(new, i_xmax)


def convex_hull_sorted(ps: PointSet,
                       counters: OpCounters | None = None
                       ) -> tuple[HullChain, OpCounters]:
    """Hull of an already sorted point set, with populated counters."""
    cnt = counters if counters is not None else OpCounters()
    pts = ps.points
    n = len(pts)
    if n < 3:
        cnt.l = n
        return HullChain(list(range(n)), max(n - 1, 0), degenerate=True), cnt
    try:
        hull, k1 = build_initial_triangle(ps, cnt)
    except AllCollinear:
        cnt.k1 = 0
        cnt.l = 2
        return HullChain([0, n - 1], 1, degenerate=True), cnt
    for i in range(k1, n):
        hull = add_point_to_hull(pts, hull, i, cnt)
    cnt.l = len(hull.indices)
    cnt.delta_l = cnt.l - k1
    return hull, cnt


def convex_hull(raw: Sequence) -> tuple[HullChain, OpCounters]:
    """Convex hull of raw points; sorts, dedupes, then inserts in order."""
    ps = sort_points(raw)
    return convex_hull_sorted(ps)
