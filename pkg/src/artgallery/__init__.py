"""Near-minimum point-guard placement for simple polygons.

A particle-filter optimizer searches for guard sets of a fixed size whose
joint visibility covers the polygon, and a binary search over the guard count
(bounded by floor(n/3)) finds the smallest size that succeeds. Coverage is
certified by two independent paths: an exact boolean union of visibility
polygons and a grid sightline oracle.
"""

from .coverage import CoverageResult, coverage_ratio, grid_coverage_oracle, union_area
from .errors import (
    ArtGalleryError,
    DegeneratePolygon,
    EmptyRegionList,
    GenerationFailure,
    GuardOutsidePolygon,
    InvalidPolygon,
    ParseError,
    QueryOutsidePolygon,
    ValidationError,
)
from .fileio import parse_guards, parse_polygon, render_svg, serialize_guards, serialize_polygon
from .geometry import (
    COLLINEAR,
    COUNTERCLOCKWISE,
    CLOCKWISE,
    INSIDE,
    ON_BOUNDARY,
    OUTSIDE,
    Polygon,
    contains_point,
    is_simple,
    orientation,
    polygon_area,
    segments_intersect,
)
from .polygen import GenSpec, convex_polygon, random_simple_polygon
from .solver import (
    Particle,
    ParticleSet,
    ProbeTrace,
    SolveResult,
    SolverConfig,
    evaluate,
    feasible_k,
    init_particles,
    resample,
    solve_min_guards,
)
from .visibility import VisibilityRegion, is_visible, visibility_polygon, visible_from

__version__ = "0.1.0"

__all__ = [
    "ArtGalleryError",
    "CLOCKWISE",
    "COLLINEAR",
    "COUNTERCLOCKWISE",
    "CoverageResult",
    "DegeneratePolygon",
    "EmptyRegionList",
    "GenSpec",
    "GenerationFailure",
    "GuardOutsidePolygon",
    "INSIDE",
    "InvalidPolygon",
    "ON_BOUNDARY",
    "OUTSIDE",
    "ParseError",
    "Particle",
    "ParticleSet",
    "Polygon",
    "ProbeTrace",
    "QueryOutsidePolygon",
    "SolveResult",
    "SolverConfig",
    "ValidationError",
    "VisibilityRegion",
    "contains_point",
    "convex_polygon",
    "coverage_ratio",
    "evaluate",
    "feasible_k",
    "grid_coverage_oracle",
    "init_particles",
    "is_simple",
    "is_visible",
    "orientation",
    "parse_guards",
    "parse_polygon",
    "polygon_area",
    "random_simple_polygon",
    "render_svg",
    "resample",
    "segments_intersect",
    "serialize_guards",
    "serialize_polygon",
    "solve_min_guards",
    "union_area",
    "visibility_polygon",
    "visible_from",
]
