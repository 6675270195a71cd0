"""Incremental Delaunay triangulation grown outward from the hull boundary.

Points are inserted in lexicographic order, so each new point lies outside
the current triangulation and no point-location step is needed.  The
triangulation is a map from undirected edges to their one or two opposite
vertices.  Inserting a point erodes the boundary: any boundary edge whose
far triangle's circumcircle contains the new point is deleted, exposing
two deeper edges to the same test; the surviving exposed chain is then
fanned to the new point.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .geometry import AllCollinear, GeometryError, OpCounters, cross, in_circle_opposite
from .hull import HullChain, PointSet, _splice, _tangent_walk, build_initial_triangle, sort_points

__all__ = [
    "EdgeKey",
    "edge_key",
    "TriangulationMap",
    "ErosionState",
    "DegenerateInput",
    "MapInconsistency",
    "MissingEdge",
    "MissingOpposite",
    "initial_fan",
    "erode_boundary",
    "add_point_delaunay",
    "triangulate_steps",
    "triangulate_sorted",
    "triangulate",
]

EdgeKey = tuple[int, int]  # (lo, hi) with lo < hi


class DegenerateInput(GeometryError):
    """Triangulation impossible: fewer than 3 distinct points, or all collinear."""


class MapInconsistency(GeometryError):
    """The edge map violated a structural invariant."""


class MissingEdge(MapInconsistency):
    """An edge required by an operation is absent from the map."""


class MissingOpposite(MapInconsistency):
    """An opposite vertex required by an operation is not on the edge's list."""


def edge_key(u: int, v: int) -> EdgeKey:
    """Normalised undirected edge key."""
    return (u, v) if u < v else (v, u)


class TriangulationMap:
    """Map from undirected edges to the 1 or 2 vertices opposite them.

    A boundary edge has exactly one opposite vertex, an interior edge two.
    Triangle (u, v, w) is present iff each of its edges lists the third
    vertex as an opposite.
    """

    __slots__ = ("edges",)

    def __init__(self) -> None:
        self.edges: dict[EdgeKey, list[int]] = {}

    def __contains__(self, key: EdgeKey) -> bool:
        return key in self.edges

    def edge_count(self) -> int:
        return len(self.edges)

    def triangle_count(self) -> int:
        total = sum(len(opp) for opp in self.edges.values())
        if total % 3:
            raise MapInconsistency("opposite-vertex total not divisible by 3")
        return total // 3

    def opposites(self, u: int, v: int) -> list[int]:
        """Opposite vertices of edge (u, v); raises if the edge is absent."""
        try:
            return self.edges[edge_key(u, v)]
        except KeyError:
            raise MissingEdge(f"edge {edge_key(u, v)} not in map") from None

    def add_triangle(self, u: int, v: int, w: int) -> None:
        edges = self.edges
        for a, b, c in ((u, v, w), (u, w, v), (v, w, u)):
            key = (a, b) if a < b else (b, a)
            opp = edges.setdefault(key, [])
            if c in opp or len(opp) >= 2:
                raise MapInconsistency(
                    f"cannot add triangle {(u, v, w)}: edge {key} already has {opp}")
            opp.append(c)

    def delete_edge(self, e: EdgeKey, far: int) -> None:
        """Remove the triangle on the ``far`` side of edge ``e``.

        ``e`` itself loses ``far`` (and disappears once it has no opposite
        left); the two exposed edges (e.lo, far) and (e.hi, far) each lose
        the other endpoint of ``e``, so a subsequent query sees at most one
        opposite on them.  They may be left temporarily empty; the caller
        is expected to reconnect them.
        """
        opp = self.edges.get(e)
        if opp is None:
            raise MissingEdge(f"edge {e} not in map")
        if far not in opp:
            raise MissingOpposite(f"vertex {far} is not opposite edge {e}")
        opp.remove(far)
        if not opp:
            del self.edges[e]
        lo, hi = e
        for kept, removed in ((lo, hi), (hi, lo)):
            side = (kept, far) if kept < far else (far, kept)
            side_opp = self.edges.get(side)
            if side_opp is None:
                raise MissingEdge(f"exposed edge {side} not in map")
            if removed not in side_opp:
                raise MissingOpposite(
                    f"vertex {removed} is not opposite exposed edge {side}")
            side_opp.remove(removed)

    def triangles(self) -> set[tuple[int, int, int]]:
        """All triangles as sorted index triples."""
        out: set[tuple[int, int, int]] = set()
        for (u, v), opp in self.edges.items():
            for w in opp:
                a, b, c = sorted((u, v, w))
                out.add((a, b, c))
        return out

    def validate(self, points: Sequence | None = None) -> None:
        """Raise MapInconsistency unless every structural invariant holds."""
        for (u, v), opp in self.edges.items():
            if not 1 <= len(opp) <= 2:
                raise MapInconsistency(f"edge {(u, v)} has {len(opp)} opposites")
            if len(opp) == 2 and opp[0] == opp[1]:
                raise MapInconsistency(f"edge {(u, v)} lists {opp[0]} twice")
            for w in opp:
                if w == u or w == v:
                    raise MapInconsistency(f"edge {(u, v)} opposite {w} degenerate")
                if v not in self.edges.get(edge_key(u, w), ()):
                    raise MapInconsistency(
                        f"triangle {(u, v, w)}: edge {edge_key(u, w)} misses {v}")
                if u not in self.edges.get(edge_key(v, w), ()):
                    raise MapInconsistency(
                        f"triangle {(u, v, w)}: edge {edge_key(v, w)} misses {u}")
                if points is not None and cross(points[u], points[v], points[w]) == 0.0:
                    raise MapInconsistency(f"triangle {(u, v, w)} is collinear")


@dataclass
class ErosionState:
    """Working state of one boundary erosion.

    ``stack`` holds candidate vertices still to be resolved (the vertex
    adjacent to the anchor on top), ``exposed`` the vertices already fixed
    on the eroded front, and ``anchor`` the front vertex whose outgoing
    edge is currently under test.
    """

    stack: list[int]
    exposed: list[int]
    anchor: int


def initial_fan(ps: PointSet, k1: int) -> TriangulationMap:
    """Triangles over the startup prefix: a fan from the first off-line point.

    Points 0..k1-2 are collinear and point k1-1 is their apex, giving the
    k1-2 triangles (j, j+1, k1-1).  A fan over a collinear run is always
    free of circumcircle violations, so it is a valid seed.
    """
    tri = TriangulationMap()
    apex = k1 - 1
    for j in range(k1 - 2):
        tri.add_triangle(j, j + 1, apex)
    return tri


def erode_boundary(ps: PointSet, tri: TriangulationMap, state: ErosionState,
                   p_index: int,
                   counters: OpCounters | None = None,
                   check_opposite: bool = False) -> ErosionState:
    """Erode boundary edges whose far circumcircle contains the new point.

    While candidates remain: if the edge from the anchor to the stack top
    exists and has a far triangle containing point ``p_index`` in its
    circumcircle, delete that edge and push the far vertex; otherwise the
    top vertex is final, so pop it onto the exposed chain and anchor there.
    An existing edge whose opposite list was pruned empty has no far
    triangle left to test (both incident triangles were already eaten), so
    it is skipped like a missing edge.
    """
    pts = ps.points
    p = pts[p_index]
    edges = tri.edges
    stack = state.stack
    exposed = state.exposed
    anchor = state.anchor
    while stack:
        top = stack[-1]
        key = (anchor, top) if anchor < top else (top, anchor)
        opp = edges.get(key)
        if opp:
            far = opp[0]
            if in_circle_opposite(p, pts[anchor], pts[top], pts[far],
                                  counters, check_opposite):
                tri.delete_edge(key, far)
                stack.append(far)
                continue
        anchor = stack.pop()
        exposed.append(anchor)
    state.anchor = anchor
    return state


def add_point_delaunay(ps: PointSet, hull: HullChain, tri: TriangulationMap,
                       p_index: int,
                       counters: OpCounters | None = None,
                       check_opposite: bool = False
                       ) -> tuple[HullChain, TriangulationMap]:
    """Insert the next sorted point into the triangulation and hull.

    Finds the tangent arc, erodes it, fans the new point to every exposed
    vertex, and splices the hull chain.  Every edge created here has
    ``p_index`` as an endpoint.
    """
    cnt = counters if counters is not None else OpCounters()
    pts = ps.points
    chain = hull.indices
    size = len(chain)
    p = pts[p_index]

    a1, a2 = _tangent_walk(pts, chain, hull.i_xmax, p, cnt)
    a1 %= size
    a2 %= size
    arc = [chain[(a1 + t) % size] for t in range(((a2 - a1) % size) + 1)]

    state = ErosionState(stack=arc[:0:-1], exposed=[arc[0]], anchor=arc[0])
    erode_boundary(ps, tri, state, p_index, cnt, check_opposite)
    exposed = state.exposed

    edges = tri.edges
    last = len(exposed) - 1
    for j in range(last):
        u, v = exposed[j], exposed[j + 1]
        edges[(u, v) if u < v else (v, u)].append(p_index)
    for j, u in enumerate(exposed):
        opp = []
        if j > 0:
            opp.append(exposed[j - 1])
        if j < last:
            opp.append(exposed[j + 1])
        edges[(u, p_index) if u < p_index else (p_index, u)] = opp

    new_chain, i_xmax = _splice(chain, a1, a2, p_index)
    return HullChain(new_chain, i_xmax), tri


def triangulate_steps(ps: PointSet,
                      counters: OpCounters | None = None,
                      check_opposite: bool = False
                      ) -> Iterator[tuple[int, HullChain, TriangulationMap]]:
    """Drive the construction, yielding (points_processed, hull, map) after
    the initial fan and after every insertion."""
    cnt = counters if counters is not None else OpCounters()
    n = len(ps.points)
    if n < 3:
        raise DegenerateInput(f"need at least 3 distinct points, got {n}")
    try:
        hull, k1 = build_initial_triangle(ps, cnt)
    except AllCollinear as exc:
        raise DegenerateInput("all distinct input points are collinear") from exc
    tri = initial_fan(ps, k1)
    yield k1, hull, tri
    for i in range(k1, n):
        hull, tri = add_point_delaunay(ps, hull, tri, i, cnt, check_opposite)
        yield i + 1, hull, tri


def triangulate_sorted(ps: PointSet,
                       counters: OpCounters | None = None,
                       check_opposite: bool = False
                       ) -> tuple[TriangulationMap, HullChain, OpCounters]:
    """Triangulate an already sorted point set."""
    cnt = counters if counters is not None else OpCounters()
    hull = tri = None
    for _, hull, tri in triangulate_steps(ps, cnt, check_opposite):
        pass
    cnt.l = len(hull.indices)
    cnt.delta_l = cnt.l - cnt.k1
    return tri, hull, cnt


def triangulate(raw: Sequence,
                counters: OpCounters | None = None,
                check_opposite: bool = False
                ) -> tuple[TriangulationMap, HullChain, OpCounters]:
    """Delaunay triangulation of raw points (sorted and de-duplicated first).

    Indices in the returned map and hull refer to lexicographically sorted
    order; use ``sort_points`` + ``triangulate_sorted`` to keep the mapping
    back to input positions.
    """
    ps = sort_points(raw)
    return triangulate_sorted(ps, counters, check_opposite)
