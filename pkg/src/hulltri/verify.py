"""Independent oracles and property checks for hulls and triangulations.

Everything here deliberately avoids the production code paths: the
in-circle oracle is a lifted determinant (the construction uses an angle
comparison), the hull baseline is a monotone chain (the construction is an
incremental tangent walk), and the small-input triangulation oracle is a
brute-force circumcircle scan.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .delaunay import DegenerateInput, MapInconsistency, TriangulationMap, triangulate_steps
from .geometry import AllCollinear, GeometryError, OpCounters, Point2, cross
from .hull import HullChain, PointSet, convex_hull_sorted, sort_points

__all__ = [
    "CollinearTriangle",
    "TooLarge",
    "VerificationReport",
    "incircle_det_raw",
    "incircle_det_oracle",
    "BruteForceDelaunay",
    "brute_force_delaunay",
    "monotone_chain_hull",
    "canonical_hull_cycle",
    "boundary_vertex_count",
    "hull_containment_violations",
    "delaunay_violations",
    "structural_counts_ok",
    "audit_counts",
    "run_verification",
]

BRUTE_FORCE_LIMIT = 24
COCIRCULAR_REL_TOL = 1e-12


class CollinearTriangle(GeometryError):
    """The three circle-defining points of an in-circle query are collinear."""


class TooLarge(GeometryError):
    """Input exceeds the brute-force oracle's size budget."""


@dataclass
class VerificationReport:
    """Outcome of one verified property, with a reproducible counterexample."""

    name: str
    passed: bool
    seed: int = 0
    detail: str = ""
    counterexample: object = None

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        text = f"PROP {self.name} {status} seed={self.seed}"
        if self.detail:
            text += f" {self.detail}"
        return text


def incircle_det_raw(a, b, c, d) -> tuple[float, float]:
    """Orientation-normalised lifted in-circle determinant and its scale.

    Positive iff ``a`` lies strictly inside the circumcircle of (b, c, d).
    The scale is the sum of the absolute values of the determinant's terms,
    so ``|det| / scale`` is a relative magnitude usable for tolerance bands.
    """
    orient = cross(b, c, d)
    if orient == 0.0:
        raise CollinearTriangle(f"circle through collinear points {b!r}, {c!r}, {d!r}")
    m00 = b[0] - a[0]
    m01 = b[1] - a[1]
    m10 = c[0] - a[0]
    m11 = c[1] - a[1]
    m20 = d[0] - a[0]
    m21 = d[1] - a[1]
    m02 = m00 * m00 + m01 * m01
    m12 = m10 * m10 + m11 * m11
    m22 = m20 * m20 + m21 * m21
    det = (m00 * (m11 * m22 - m12 * m21)
           - m01 * (m10 * m22 - m12 * m20)
           + m02 * (m10 * m21 - m11 * m20))
    scale = (abs(m00) * (abs(m11 * m22) + abs(m12 * m21))
             + abs(m01) * (abs(m10 * m22) + abs(m12 * m20))
             + abs(m02) * (abs(m10 * m21) + abs(m11 * m20)))
    if orient < 0.0:
        det = -det
    return det, scale


def incircle_det_oracle(a, b, c, d, rel_tol: float = COCIRCULAR_REL_TOL) -> int:
    """Sign oracle: +1 strictly inside, -1 strictly outside, 0 cocircular.

    Values whose relative magnitude falls below ``rel_tol`` are reported as
    cocircular rather than given an arbitrary sign.
    """
    det, scale = incircle_det_raw(a, b, c, d)
    if abs(det) <= rel_tol * scale:
        return 0
    return 1 if det > 0.0 else -1


@dataclass
class BruteForceDelaunay:
    """Brute-force oracle output as an equivalence class.

    ``certain`` holds triangles with strictly empty circumcircles even under
    the cocircular tolerance; ``candidates`` additionally admits triangles
    whose circumcircle has points exactly on it (within tolerance).  When no
    cocircular ties exist the two sets coincide and the triangulation is
    unique.
    """

    certain: set[tuple[int, int, int]]
    candidates: set[tuple[int, int, int]]
    cocircular: bool
    expected_triangles: int

    def matches(self, triangles: set[tuple[int, int, int]]) -> bool:
        if not self.cocircular:
            return triangles == self.certain
        return (self.certain <= triangles <= self.candidates
                and len(triangles) == self.expected_triangles)


def brute_force_delaunay(ps: PointSet,
                         rel_tol: float = COCIRCULAR_REL_TOL) -> BruteForceDelaunay:
    """Enumerate every triple with an empty circumcircle (O(n^4) scan)."""
    pts = ps.points
    n = len(pts)
    if n > BRUTE_FORCE_LIMIT:
        raise TooLarge(f"brute-force oracle capped at {BRUTE_FORCE_LIMIT} points, got {n}")
    certain: set[tuple[int, int, int]] = set()
    candidates: set[tuple[int, int, int]] = set()
    cocircular = False
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                if cross(pts[i], pts[j], pts[k]) == 0.0:
                    continue
                strict_inside = 0
                on_circle = 0
                for q in range(n):
                    if q == i or q == j or q == k:
                        continue
                    sign = incircle_det_oracle(pts[q], pts[i], pts[j], pts[k], rel_tol)
                    if sign > 0:
                        strict_inside += 1
                        break
                    if sign == 0:
                        on_circle += 1
                if strict_inside:
                    continue
                candidates.add((i, j, k))
                if on_circle:
                    cocircular = True
                else:
                    certain.add((i, j, k))
    expected = 2 * n - boundary_vertex_count(ps) - 2
    return BruteForceDelaunay(certain, candidates, cocircular, expected)


def monotone_chain_hull(ps: PointSet) -> list[int]:
    """Strictly convex counterclockwise hull cycle by the monotone chain scan.

    Collinear edge-interior points are dropped, so the result is already
    canonical.  Raises AllCollinear when no proper polygon exists.
    """
    pts = ps.points
    n = len(pts)
    if n < 3:
        raise AllCollinear(f"need at least 3 points, got {n}")
    lower: list[int] = []
    for i in range(n):
        while len(lower) >= 2 and cross(pts[lower[-2]], pts[lower[-1]], pts[i]) <= 0.0:
            lower.pop()
        lower.append(i)
    upper: list[int] = []
    for i in range(n - 1, -1, -1):
        while len(upper) >= 2 and cross(pts[upper[-2]], pts[upper[-1]], pts[i]) <= 0.0:
            upper.pop()
        upper.append(i)
    cycle = lower[:-1] + upper[:-1]
    if len(cycle) < 3:
        raise AllCollinear("all points lie on one line")
    return cycle


def canonical_hull_cycle(points: Sequence[Point2], chain: Iterable[int]) -> list[int]:
    """Drop collinear edge-interior vertices and rotate to the smallest index."""
    cycle = list(chain)
    size = len(cycle)
    corners = [cycle[i] for i in range(size)
               if cross(points[cycle[i - 1]], points[cycle[i]],
                        points[cycle[(i + 1) % size]]) != 0.0]
    if not corners:
        return cycle
    pivot = corners.index(min(corners))
    return corners[pivot:] + corners[:pivot]


def boundary_vertex_count(ps: PointSet) -> int:
    """Hull boundary length counting points that lie on hull edges."""
    corners = monotone_chain_hull(ps)
    pts = ps.points
    corner_set = set(corners)
    count = len(corners)
    size = len(corners)
    for q in range(len(pts)):
        if q in corner_set:
            continue
        for i in range(size):
            u = pts[corners[i]]
            v = pts[corners[(i + 1) % size]]
            if cross(u, v, pts[q]) == 0.0 and _between(u, v, pts[q]):
                count += 1
                break
    return count


def _between(u, v, q) -> bool:
    return (min(u[0], v[0]) <= q[0] <= max(u[0], v[0])
            and min(u[1], v[1]) <= q[1] <= max(u[1], v[1]))


def hull_containment_violations(points: Sequence[Point2], hull: HullChain,
                                rel_tol: float = 1e-12) -> list[int]:
    """Indices of points falling strictly outside any hull edge half-plane."""
    chain = hull.indices
    size = len(chain)
    bad = []
    for q in range(len(points)):
        for i in range(size):
            u = points[chain[i]]
            v = points[chain[(i + 1) % size]]
            side = cross(u, v, points[q])
            span = (abs(v[0] - u[0]) + abs(v[1] - u[1])
                    + abs(points[q][0] - u[0]) + abs(points[q][1] - u[1]))
            if side < -rel_tol * span * span:
                bad.append(q)
                break
    return bad


def delaunay_violations(ps: PointSet, tri: TriangulationMap,
                        rel_tol: float = 1e-9
                        ) -> list[tuple[tuple[int, int, int], int, float]]:
    """Triangles with some other point strictly inside their circumcircle.

    A point counts as a violation only when the oracle determinant's
    relative magnitude exceeds ``rel_tol``, so cocircular ties never fail.
    """
    pts = ps.points
    out = []
    for (u, v, w) in tri.triangles():
        a, b, c = pts[u], pts[v], pts[w]
        for q in range(len(pts)):
            if q == u or q == v or q == w:
                continue
            det, scale = incircle_det_raw(pts[q], a, b, c)
            if det > rel_tol * scale:
                out.append(((u, v, w), q, det / scale if scale else float("inf")))
    return out


def structural_counts_ok(n_processed: int, hull: HullChain,
                         tri: TriangulationMap) -> bool:
    """Planarity bookkeeping: t = 2n - l - 2 and e = 3n - l - 3."""
    l = len(hull.indices)
    return (tri.triangle_count() == 2 * n_processed - l - 2
            and tri.edge_count() == 3 * n_processed - l - 3)


def audit_counts(run: OpCounters, n: int, seed: int = 0) -> VerificationReport:
    """Check the exact orientation-test count identity of a hull run.

    With collinear boundary vertices retained on the chain the exact
    identity is  to_left = 3n - k1 - l + h - 2;  for the generic k1 = 3
    startup this equals the corollary form  3n - l + h - 5.
    """
    expected = 3 * n - run.k1 - run.l + run.h - 2
    passed = run.to_left_calls == expected
    detail = (f"n={n} k1={run.k1} h={run.h} l={run.l} "
              f"measured={run.to_left_calls} expected={expected}")
    if run.k1 == 3:
        corollary = 3 * n - run.l + run.h - 5
        passed = passed and run.to_left_calls == corollary
        detail += f" corollary={corollary}"
    return VerificationReport("count-identity", passed, seed, detail,
                              counterexample=None if passed else run)


def run_verification(raw_points: Sequence, seed: int = 0) -> list[VerificationReport]:
    """Run every applicable property against one input; one report each."""
    reports: list[VerificationReport] = []
    ps = sort_points(raw_points)
    n = len(ps.points)

    hull_counters = OpCounters()
    hull, hull_counters = convex_hull_sorted(ps, hull_counters)
    if hull.degenerate:
        reports.append(VerificationReport(
            "degenerate-input", True, seed,
            f"collinear or tiny input, n={n}; triangulation checks skipped"))
        return reports

    base = monotone_chain_hull(ps)
    canon = canonical_hull_cycle(ps.points, hull.indices)
    reports.append(VerificationReport(
        "hull-baseline", canon == base, seed,
        f"n={n}", None if canon == base else (canon, base)))

    outside = hull_containment_violations(ps.points, hull)
    reports.append(VerificationReport(
        "hull-containment", not outside, seed,
        f"n={n}", outside or None))

    reports.append(audit_counts(hull_counters, n, seed))
    reports.append(VerificationReport(
        "to-left-linear-bound", hull_counters.to_left_calls < 4 * n, seed,
        f"measured={hull_counters.to_left_calls} bound={4 * n}"))

    structural_ok = True
    locality_ok = True
    tri = final_hull = None
    counters = OpCounters()
    before: set = set()
    try:
        for count, step_hull, step_tri in triangulate_steps(ps, counters,
                                                            check_opposite=True):
            if not structural_counts_ok(count, step_hull, step_tri):
                structural_ok = False
            now = set(step_tri.edges)
            created = now - before
            if before and any(count - 1 not in key for key in created):
                locality_ok = False
            before = now
            tri, final_hull = step_tri, step_hull
    except DegenerateInput:
        reports.append(VerificationReport(
            "degenerate-input", True, seed, "triangulation skipped"))
        return reports

    reports.append(VerificationReport("structural-identities", structural_ok, seed,
                                      f"n={n} l={len(final_hull.indices)}"))
    reports.append(VerificationReport("new-edge-locality", locality_ok, seed))

    try:
        tri.validate(ps.points)
        reports.append(VerificationReport("map-consistency", True, seed))
    except MapInconsistency as exc:
        reports.append(VerificationReport("map-consistency", False, seed, str(exc)))

    violations = delaunay_violations(ps, tri)
    reports.append(VerificationReport(
        "empty-circumcircle", not violations, seed,
        f"triangles={tri.triangle_count()}", violations or None))

    if n <= BRUTE_FORCE_LIMIT - 4:
        brute = brute_force_delaunay(ps)
        ok = brute.matches(tri.triangles())
        reports.append(VerificationReport(
            "brute-force-equivalence", ok, seed,
            f"n={n} cocircular={brute.cocircular}",
            None if ok else (tri.triangles(), brute)))
    return reports
