"""Coverage of a polygon by guard visibility regions.

Two independent paths: an exact boolean union of the visibility polygons
(GEOS via shapely) and a grid estimate that casts sightlines to cell centers.
The solver only certifies full coverage when both agree.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
from shapely import make_valid, union_all
from shapely.geometry import Polygon as _ShapelyPolygon

from .errors import EmptyRegionList, GuardOutsidePolygon
from .geometry import INSIDE, PointLike, Polygon
from .visibility import visibility_polygon, visible_from

# Regions smaller than this fraction of the clip area are dropped before the
# union; they are epsilon-width slivers from window degeneracies.
SLIVER_REL = 1e-12

# Defaults for declaring coverage complete (both paths must agree).
FULL_COVERAGE_TOL = 1e-6
GRID_CONFIRM_RESOLUTION = 256
GRID_CONFIRM_RATIO = 0.999


@dataclass(frozen=True)
class CoverageResult:
    ratio: float
    covered_area: float
    method: str  # "exact_union" | "grid_estimate"
    sample_count: int | None = None


def _to_shapely(poly: Polygon) -> _ShapelyPolygon:
    shp = _ShapelyPolygon(poly.vertices)
    if not shp.is_valid:
        shp = make_valid(shp)
    return shp


def union_area(regions: Sequence[Polygon], clip: Polygon) -> float:
    """Area of the set union of the regions, clipped to the enclosing polygon."""
    if not regions:
        raise EmptyRegionList("need at least one region")
    floor = SLIVER_REL * clip.area
    shapes = [_to_shapely(r) for r in regions if r.area > floor]
    if not shapes:
        return 0.0
    merged = union_all(shapes).intersection(_to_shapely(clip))
    return float(merged.area)


def check_guards(P: Polygon, guards: Sequence[PointLike]) -> None:
    """Raise GuardOutsidePolygon for the first guard not strictly inside P."""
    if not guards:
        raise GuardOutsidePolygon(0, "guard list is empty")
    for i, g in enumerate(guards):
        if P.contains(g) != INSIDE:
            raise GuardOutsidePolygon(i, f"guard {i} at {tuple(g)} is not strictly inside the polygon")


def coverage_ratio(P: Polygon, guards: Sequence[PointLike]) -> CoverageResult:
    """Fraction of the polygon's area jointly visible from the guards (exact union)."""
    check_guards(P, guards)
    regions = [visibility_polygon(P, g).polygon for g in guards]
    covered = union_area(regions, P)
    ratio = min(covered / P.area, 1.0)
    return CoverageResult(ratio=ratio, covered_area=covered, method="exact_union")


def grid_coverage_oracle(P: Polygon, guards: Sequence[PointLike], resolution: int) -> CoverageResult:
    """Independent coverage estimate on a resolution x resolution cell grid.

    Counts bounding-box cell centers that are inside P and visible from at
    least one guard; converges to coverage_ratio as the resolution grows.
    """
    check_guards(P, guards)
    if resolution < 16:
        raise ValueError(f"resolution must be >= 16, got {resolution}")
    xmin, ymin, xmax, ymax = P.bbox
    xs = xmin + (np.arange(resolution) + 0.5) * (xmax - xmin) / resolution
    ys = ymin + (np.arange(resolution) + 0.5) * (ymax - ymin) / resolution
    gx, gy = np.meshgrid(xs, ys)
    centers = np.column_stack((gx.ravel(), gy.ravel()))

    inside = P.contains_mask(centers)
    total = int(inside.sum())
    if total == 0:
        raise ValueError("no grid cell centers fall inside the polygon; raise the resolution")
    targets = centers[inside]

    seen = np.zeros(total, dtype=bool)
    for g in guards:
        todo = ~seen
        if not todo.any():
            break
        seen[todo] = visible_from(P, g, targets[todo])

    ratio = float(seen.sum()) / total
    return CoverageResult(
        ratio=ratio,
        covered_area=ratio * P.area,
        method="grid_estimate",
        sample_count=total,
    )


def is_fully_covered(P: Polygon, guards: Sequence[PointLike]) -> bool:
    """Full-coverage certificate: exact union and grid estimate must both agree."""
    exact = coverage_ratio(P, guards)
    if exact.ratio < 1.0 - FULL_COVERAGE_TOL:
        return False
    grid = grid_coverage_oracle(P, guards, GRID_CONFIRM_RESOLUTION)
    return grid.ratio >= GRID_CONFIRM_RATIO
