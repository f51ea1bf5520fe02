"""Planar primitives: orientation, segment intersection, containment, area, simplicity.

All predicates are tolerance-based with relative epsilons, so behavior does not
depend on the coordinate scale. Coordinates are float64; inputs at the scale of
a few hundred units (integer-ish survey data) are handled exactly.
"""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from .errors import DegeneratePolygon, InvalidPolygon

# Relative tolerances. ORIENT_EPS scales with the product of operand spans,
# BOUNDARY_EPS with the polygon's bounding-box diagonal.
ORIENT_EPS = 1e-9
BOUNDARY_EPS = 1e-9

# orientation() results
COUNTERCLOCKWISE = 1
CLOCKWISE = -1
COLLINEAR = 0

# contains_point() results
INSIDE = "inside"
ON_BOUNDARY = "on_boundary"
OUTSIDE = "outside"

PointLike = Sequence[float]


def orientation(a: PointLike, b: PointLike, c: PointLike) -> int:
    """Sign of the cross product (b-a) x (c-a): +1 ccw, -1 cw, 0 collinear."""
    ux, uy = b[0] - a[0], b[1] - a[1]
    vx, vy = c[0] - a[0], c[1] - a[1]
    det = ux * vy - uy * vx
    scale = (abs(ux) + abs(uy)) * (abs(vx) + abs(vy))
    if abs(det) <= ORIENT_EPS * scale:
        return COLLINEAR
    return COUNTERCLOCKWISE if det > 0.0 else CLOCKWISE


def _segment_param(p: PointLike, a: PointLike, b: PointLike) -> float:
    """Parameter t of the projection of p onto the line a + t*(b-a)."""
    dx, dy = b[0] - a[0], b[1] - a[1]
    denom = dx * dx + dy * dy
    if denom == 0.0:
        return 0.0
    return ((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / denom


def point_on_segment(p: PointLike, a: PointLike, b: PointLike) -> bool:
    """True if p lies on segment ab within the relative collinearity tolerance."""
    if orientation(a, b, p) != COLLINEAR:
        return False
    t = _segment_param(p, a, b)
    eps = 1e-9
    return -eps <= t <= 1.0 + eps


def segments_intersect(
    p1: PointLike, p2: PointLike, q1: PointLike, q2: PointLike
) -> tuple[str, tuple[float, float] | None]:
    """Classify the intersection of segments p1p2 and q1q2.

    Returns ("none", None), ("proper", point), ("touching", point) or
    ("overlap", None). "proper" is a transversal crossing interior to both
    segments; "touching" covers shared endpoints and endpoint-on-interior
    contacts; "overlap" means a collinear overlap of positive length.
    """
    o1 = orientation(q1, q2, p1)
    o2 = orientation(q1, q2, p2)
    o3 = orientation(p1, p2, q1)
    o4 = orientation(p1, p2, q2)

    if o1 == 0 and o2 == 0 and o3 == 0 and o4 == 0:
        # Collinear: compare parameter intervals along p1p2.
        t1 = _segment_param(q1, p1, p2)
        t2 = _segment_param(q2, p1, p2)
        lo, hi = min(t1, t2), max(t1, t2)
        eps = 1e-9
        if hi < -eps or lo > 1.0 + eps:
            return "none", None
        ov_lo, ov_hi = max(lo, 0.0), min(hi, 1.0)
        if ov_hi - ov_lo > eps:
            return "overlap", None
        t = 0.5 * (ov_lo + ov_hi)
        x = p1[0] + t * (p2[0] - p1[0])
        y = p1[1] + t * (p2[1] - p1[1])
        return "touching", (x, y)

    # An endpoint on the other segment's line: touch iff it is on the segment.
    for pt, o_val, seg in ((p1, o1, (q1, q2)), (p2, o2, (q1, q2)), (q1, o3, (p1, p2)), (q2, o4, (p1, p2))):
        if o_val == 0 and point_on_segment(pt, *seg):
            return "touching", (float(pt[0]), float(pt[1]))

    if o1 != o2 and o3 != o4:
        # Proper crossing; solve the 2x2 line system for the point.
        dx1, dy1 = p2[0] - p1[0], p2[1] - p1[1]
        dx2, dy2 = q2[0] - q1[0], q2[1] - q1[1]
        denom = dx1 * dy2 - dy1 * dx2
        t = ((q1[0] - p1[0]) * dy2 - (q1[1] - p1[1]) * dx2) / denom
        return "proper", (p1[0] + t * dx1, p1[1] + t * dy1)

    return "none", None


def shoelace(vertices: np.ndarray) -> float:
    """Signed area of the vertex loop (positive for counterclockwise)."""
    x = vertices[:, 0]
    y = vertices[:, 1]
    return 0.5 * float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))


def is_simple(vertices: Sequence[PointLike]) -> bool:
    """True iff no non-adjacent edge pair intersects and no adjacent pair overlaps."""
    n = len(vertices)
    if n < 3:
        return False
    edges = [(vertices[i], vertices[(i + 1) % n]) for i in range(n)]
    for i in range(n):
        a, b = edges[i]
        if a[0] == b[0] and a[1] == b[1]:
            return False
        for j in range(i + 1, n):
            c, d = edges[j]
            kind, _ = segments_intersect(a, b, c, d)
            adjacent = (j == i + 1) or (i == 0 and j == n - 1)
            if adjacent:
                if kind != "touching":
                    return False
            elif kind != "none":
                return False
    return True


class Polygon:
    """Simple polygon stored counterclockwise, with cached area and bbox.

    Clockwise input is reversed on construction. A vertex list whose last
    vertex exactly repeats the first is accepted and the duplicate dropped;
    any other consecutive duplicate is rejected.
    """

    __slots__ = ("vertices", "n", "area", "bbox", "boundary_eps", "_edges_a", "_edges_b")

    def __init__(self, vertices, check_simple: bool = True):
        pts = np.array(vertices, dtype=float)
        if pts.ndim != 2 or pts.shape[1] != 2:
            raise DegeneratePolygon("expected an (n, 2) vertex list")
        if not np.all(np.isfinite(pts)):
            raise DegeneratePolygon("vertices must be finite")
        if len(pts) >= 4 and np.array_equal(pts[0], pts[-1]):
            pts = pts[:-1]
        if len(pts) < 3:
            raise DegeneratePolygon(f"need at least 3 vertices, got {len(pts)}")

        span = float(np.max(np.ptp(pts, axis=0)))
        if span <= 0.0:
            raise DegeneratePolygon("all vertices coincide")
        edge_len = np.hypot(*(np.roll(pts, -1, axis=0) - pts).T)
        if np.any(edge_len <= 1e-12 * span):
            raise DegeneratePolygon("zero-length edge (duplicate consecutive vertices)")

        signed = shoelace(pts)
        if abs(signed) <= 1e-12 * span * span:
            raise DegeneratePolygon("polygon has zero area")
        if signed < 0.0:
            pts = pts[::-1].copy()

        if check_simple and not is_simple([tuple(p) for p in pts]):
            raise InvalidPolygon("polygon edges self-intersect")

        pts.setflags(write=False)
        self.vertices = pts
        self.n = len(pts)
        self.area = abs(signed)
        xmin, ymin = pts.min(axis=0)
        xmax, ymax = pts.max(axis=0)
        self.bbox = (float(xmin), float(ymin), float(xmax), float(ymax))
        self.boundary_eps = BOUNDARY_EPS * self.bbox_diagonal
        self._edges_a = pts
        self._edges_b = np.roll(pts, -1, axis=0)

    @property
    def bbox_diagonal(self) -> float:
        xmin, ymin, xmax, ymax = self.bbox
        return math.hypot(xmax - xmin, ymax - ymin)

    def edges(self):
        """Iterate (a, b) vertex pairs for each edge."""
        return zip(self._edges_a, self._edges_b)

    def boundary_distance(self, q: PointLike) -> float:
        """Distance from q to the nearest point of the boundary."""
        a = self._edges_a
        b = self._edges_b
        d = b - a
        qq = np.asarray(q, dtype=float)
        denom = np.einsum("ij,ij->i", d, d)
        t = np.clip(np.einsum("ij,ij->i", qq - a, d) / np.where(denom == 0.0, 1.0, denom), 0.0, 1.0)
        proj = a + t[:, None] * d
        return float(np.min(np.hypot(*(proj - qq).T)))

    def contains(self, q: PointLike) -> str:
        """Classify q as INSIDE, ON_BOUNDARY (within eps band) or OUTSIDE."""
        if self.boundary_distance(q) <= self.boundary_eps:
            return ON_BOUNDARY
        return INSIDE if self._even_odd(float(q[0]), float(q[1])) else OUTSIDE

    def _even_odd(self, x: float, y: float) -> bool:
        inside = False
        v = self.vertices
        x1, y1 = v[-1]
        for x2, y2 in v:
            if (y1 > y) != (y2 > y):
                xi = x1 + (y - y1) * (x2 - x1) / (y2 - y1)
                if x < xi:
                    inside = not inside
            x1, y1 = x2, y2
        return inside

    def contains_mask(self, points: np.ndarray) -> np.ndarray:
        """Vectorized even-odd test; boundary band not distinguished."""
        pts = np.asarray(points, dtype=float)
        x = pts[:, 0]
        y = pts[:, 1]
        inside = np.zeros(len(pts), dtype=bool)
        v = self.vertices
        x1, y1 = v[-1]
        for x2, y2 in v:
            crosses = (y1 > y) != (y2 > y)
            if np.any(crosses):
                xi = x1 + (y[crosses] - y1) * (x2 - x1) / (y2 - y1)
                hit = np.zeros(len(pts), dtype=bool)
                hit[crosses] = x[crosses] < xi
                inside ^= hit
            x1, y1 = x2, y2
        return inside

    def __repr__(self) -> str:
        return f"Polygon(n={self.n}, area={self.area:.6g})"


def polygon_area(poly: Polygon) -> float:
    """Positive shoelace area of the polygon."""
    return poly.area


def contains_point(poly: Polygon, q: PointLike) -> str:
    """Even-odd classification of q with an ON_BOUNDARY band around the edges."""
    return poly.contains(q)
