"""Visibility polygon of an interior point, and point-to-point visibility.

The visibility polygon is computed by an angular wedge walk: the directions of
all polygon vertices split the circle around the query point into wedges, and
inside each open wedge the nearest edge is constant (edges of a simple polygon
cannot cross). Casting one ray through each wedge midpoint therefore pins the
nearest edge per wedge exactly, and the visible region is assembled from the
nearest-edge fragments clipped by the wedge boundary rays. Window vertices at
reflex occlusions fall out of the walk wherever the nearest edge jumps.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegeneratePolygon, QueryOutsidePolygon
from .geometry import (
    COLLINEAR,
    INSIDE,
    ON_BOUNDARY,
    OUTSIDE,
    PointLike,
    Polygon,
    orientation,
    segments_intersect,
)

ANGLE_EPS = 1e-12


@dataclass(frozen=True)
class VisibilityRegion:
    """Star-shaped region of the enclosing polygon visible from `source`."""

    polygon: Polygon
    source: tuple[float, float]


def visibility_polygon(P: Polygon, q: PointLike) -> VisibilityRegion:
    """Region of P visible from the strictly interior point q.

    Raises QueryOutsidePolygon if q is outside or on the boundary band.
    """
    where = P.contains(q)
    if where == OUTSIDE:
        raise QueryOutsidePolygon(f"query point {tuple(q)} is outside the polygon")
    if where == ON_BOUNDARY:
        raise QueryOutsidePolygon(f"query point {tuple(q)} lies on the boundary; an interior point is required")

    qx, qy = float(q[0]), float(q[1])
    v = P.vertices
    a = P._edges_a
    b = P._edges_b
    e = b - a
    fx = a[:, 0] - qx
    fy = a[:, 1] - qy

    angles = np.sort(np.arctan2(v[:, 1] - qy, v[:, 0] - qx))
    keep = np.concatenate(([True], np.diff(angles) > ANGLE_EPS))
    angles = angles[keep]
    if len(angles) > 1 and (angles[0] + 2.0 * math.pi) - angles[-1] <= ANGLE_EPS:
        angles = angles[:-1]

    lo = angles
    hi = np.concatenate((angles[1:], angles[:1] + 2.0 * math.pi))
    mid = 0.5 * (lo + hi)

    t_min_floor = 1e-12 * P.bbox_diagonal

    def ray_edge(dirs: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Per (ray, edge): denom = dir x e, t = f x e / denom, s = f x dir / denom."""
        dx = dirs[:, 0:1]
        dy = dirs[:, 1:2]
        denom = dx * e[:, 1] - dy * e[:, 0]
        t_num = fx * e[:, 1] - fy * e[:, 0]
        s_num = fx * dy - fy * dx
        with np.errstate(divide="ignore", invalid="ignore"):
            t = t_num / denom
            s = s_num / denom
        return denom, t, s

    mid_dirs = np.column_stack((np.cos(mid), np.sin(mid)))
    denom, t, s = ray_edge(mid_dirs)
    valid = (np.abs(denom) > 1e-15) & (s >= -1e-9) & (s <= 1.0 + 1e-9) & (t > t_min_floor)
    t = np.where(valid, t, np.inf)
    nearest = np.argmin(t, axis=1)
    if not np.all(np.isfinite(t[np.arange(len(mid)), nearest])):
        raise DegeneratePolygon("a sweep ray escaped the polygon; input is not a valid simple polygon")

    def boundary_hits(theta: np.ndarray) -> np.ndarray:
        """Hit point of each wedge's nearest edge with its boundary ray."""
        dirs = np.column_stack((np.cos(theta), np.sin(theta)))
        ea = a[nearest]
        ee = e[nearest]
        den = dirs[:, 0] * ee[:, 1] - dirs[:, 1] * ee[:, 0]
        s_num = fx[nearest] * dirs[:, 1] - fy[nearest] * dirs[:, 0]
        with np.errstate(divide="ignore", invalid="ignore"):
            sb = s_num / den
        sb = np.clip(np.nan_to_num(sb, nan=0.0, posinf=1.0, neginf=0.0), 0.0, 1.0)
        return ea + sb[:, None] * ee

    p_lo = boundary_hits(lo)
    p_hi = boundary_hits(hi)

    pts = np.empty((2 * len(mid), 2), dtype=float)
    pts[0::2] = p_lo
    pts[1::2] = p_hi
    pts = _dedupe_ring(pts, 1e-9 * P.bbox_diagonal)
    pts = _prune_collinear(pts)
    if len(pts) < 3:
        raise DegeneratePolygon("visibility region collapsed; input polygon is degenerate near the query point")

    region = Polygon(pts, check_simple=False)
    return VisibilityRegion(region, (qx, qy))


def _dedupe_ring(pts: np.ndarray, eps: float) -> np.ndarray:
    diff = pts - np.roll(pts, 1, axis=0)
    keep = np.hypot(diff[:, 0], diff[:, 1]) > eps
    return pts[keep]


def _prune_collinear(pts: np.ndarray) -> np.ndarray:
    out = []
    n = len(pts)
    for i in range(n):
        prev = pts[i - 1] if not out else out[-1]
        cur = pts[i]
        nxt = pts[(i + 1) % n]
        if orientation(prev, cur, nxt) != COLLINEAR:
            out.append(cur)
    # The wrap-around triple may still be collinear after the pass.
    while len(out) >= 3 and orientation(out[-2], out[-1], out[0]) == COLLINEAR:
        out.pop()
    return np.array(out) if out else pts[:0]


def is_visible(P: Polygon, a: PointLike, b: PointLike) -> bool:
    """True iff the open segment ab stays within the closed polygon.

    Grazing along the boundary (collinear with an edge) counts as visible;
    passing transversally through a boundary vertex, including the pinch at a
    reflex corner, does not.
    """
    ca = P.contains(a)
    cb = P.contains(b)
    if ca == OUTSIDE or cb == OUTSIDE:
        raise QueryOutsidePolygon("both endpoints must be inside or on the boundary")

    ax, ay = float(a[0]), float(a[1])
    bx, by = float(b[0]), float(b[1])
    seg_len = math.hypot(bx - ax, by - ay)
    if seg_len <= P.boundary_eps:
        return True

    eps_pt = P.boundary_eps
    t_eps = eps_pt / seg_len
    params = {0.0, 1.0}
    v = P.vertices
    n = P.n

    def param_of(pt) -> float:
        return ((pt[0] - ax) * (bx - ax) + (pt[1] - ay) * (by - ay)) / (seg_len * seg_len)

    for i in range(n):
        u = v[i]
        w = v[(i + 1) % n]
        kind, pt = segments_intersect((ax, ay), (bx, by), u, w)
        if kind == "proper":
            return False
        if kind == "overlap":
            params.add(min(max(param_of(u), 0.0), 1.0))
            params.add(min(max(param_of(w), 0.0), 1.0))
        elif kind == "touching":
            t = min(max(param_of(pt), 0.0), 1.0)
            params.add(t)
            if t_eps < t < 1.0 - t_eps:
                vertex = None
                if math.hypot(pt[0] - u[0], pt[1] - u[1]) <= eps_pt:
                    vertex = i
                elif math.hypot(pt[0] - w[0], pt[1] - w[1]) <= eps_pt:
                    vertex = (i + 1) % n
                if vertex is not None:
                    prev_v = v[vertex - 1]
                    next_v = v[(vertex + 1) % n]
                    grazes = (
                        orientation((ax, ay), (bx, by), prev_v) == COLLINEAR
                        or orientation((ax, ay), (bx, by), next_v) == COLLINEAR
                    )
                    if not grazes:
                        # Transversal pass through a vertex: blocked (reflex pinch).
                        return False

    ts = sorted(params)
    for t0, t1 in zip(ts, ts[1:]):
        if t1 - t0 <= 2.0 * t_eps:
            continue
        tm = 0.5 * (t0 + t1)
        m = (ax + tm * (bx - ax), ay + tm * (by - ay))
        if P.contains(m) == OUTSIDE:
            return False
    return True


def visible_from(P: Polygon, source: PointLike, points: np.ndarray) -> np.ndarray:
    """Vectorized visibility of many points from one interior source.

    Batch form of is_visible for points in general position: a point is
    visible unless some edge properly crosses its segment to the source.
    Boundary-grazing contacts do not block, matching is_visible almost
    everywhere (the measure-zero vertex-touch cases are resolved as visible).
    """
    pts = np.asarray(points, dtype=float)
    gx, gy = float(source[0]), float(source[1])
    px = pts[:, 0] - gx
    py = pts[:, 1] - gy
    blocked = np.zeros(len(pts), dtype=bool)
    for (ux, uy), (wx, wy) in P.edges():
        rux, ruy = ux - gx, uy - gy
        rwx, rwy = wx - gx, wy - gy
        o1 = px * ruy - py * rux
        o2 = px * rwy - py * rwx
        ex, ey = wx - ux, wy - uy
        o3 = ex * (gy - uy) - ey * (gx - ux)
        o4 = ex * (pts[:, 1] - uy) - ey * (pts[:, 0] - ux)
        blocked |= (o1 * o2 < 0.0) & (o3 * o4 < 0.0)
    return ~blocked
