"""Seeded random simple-polygon generation for benchmarks and property tests.

Generation is 2-opt untangling: sample n uniform points in the box, connect
them in order, and repeatedly reverse the sub-chain between any two crossing
edges until no crossings remain (each reversal strictly shortens the tour, so
the loop terminates). Degenerate output (needle angles, tiny edges) is
rejected and the attempt re-seeded.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import GenerationFailure, ValidationError
from .geometry import Polygon, shoelace

MIN_EDGE_REL = 1e-3  # of bbox diagonal
MIN_ANGLE = 1e-4  # radians away from 0 and 2*pi
MAX_ATTEMPTS = 64

_U64 = (1 << 64) - 1


@dataclass(frozen=True)
class GenSpec:
    """Target vertex count, seed, and bounding box (xmin, ymin, xmax, ymax)."""

    n: int
    seed: int
    bbox: tuple[float, float, float, float] = (0.0, 0.0, 512.0, 512.0)

    def __post_init__(self):
        if self.n < 3:
            raise ValueError("n must be >= 3")
        xmin, ymin, xmax, ymax = self.bbox
        if not (xmax > xmin and ymax > ymin):
            raise ValueError("bbox must have positive extent")


def _rng(seed: int, *path: int) -> np.random.Generator:
    return np.random.default_rng([seed & _U64, *path])


def _first_crossing(pts: np.ndarray) -> tuple[int, int] | None:
    """Indices (i, j) of the first pair of properly crossing edges, if any."""
    n = len(pts)
    a = pts
    b = np.roll(pts, -1, axis=0)
    e = b - a
    diff_aa = a[:, None, :] - a[None, :, :]
    diff_ba = b[:, None, :] - a[None, :, :]
    o1 = e[None, :, 0] * diff_aa[..., 1] - e[None, :, 1] * diff_aa[..., 0]
    o2 = e[None, :, 0] * diff_ba[..., 1] - e[None, :, 1] * diff_ba[..., 0]
    straddle = o1 * o2 < 0.0
    proper = straddle & straddle.T
    iu = np.triu_indices(n, k=2)
    mask = np.zeros((n, n), dtype=bool)
    mask[iu] = True
    mask[0, n - 1] = False  # wrap-around adjacency
    hits = np.argwhere(proper & mask)
    if len(hits) == 0:
        return None
    return int(hits[0, 0]), int(hits[0, 1])


def _untangle(pts: np.ndarray, max_swaps: int) -> np.ndarray | None:
    pts = pts.copy()
    for _ in range(max_swaps):
        hit = _first_crossing(pts)
        if hit is None:
            return pts
        i, j = hit
        pts[i + 1 : j + 1] = pts[i + 1 : j + 1][::-1]
    return None


def _features_ok(pts: np.ndarray, diag: float) -> bool:
    edges = np.roll(pts, -1, axis=0) - pts
    lengths = np.hypot(edges[:, 0], edges[:, 1])
    if np.any(lengths < MIN_EDGE_REL * diag):
        return False
    if shoelace(pts) < 0.0:
        pts = pts[::-1]
        edges = np.roll(pts, -1, axis=0) - pts
    incoming = np.roll(edges, 1, axis=0)
    turn = np.arctan2(
        incoming[:, 0] * edges[:, 1] - incoming[:, 1] * edges[:, 0],
        incoming[:, 0] * edges[:, 0] + incoming[:, 1] * edges[:, 1],
    )
    interior = math.pi - turn
    return bool(np.all((interior > MIN_ANGLE) & (interior < 2.0 * math.pi - MIN_ANGLE)))


def random_simple_polygon(spec: GenSpec) -> Polygon:
    """Simple polygon with exactly spec.n vertices, deterministic in the seed."""
    xmin, ymin, xmax, ymax = spec.bbox
    diag = math.hypot(xmax - xmin, ymax - ymin)
    max_swaps = max(2000, 50 * spec.n * spec.n)
    for attempt in range(MAX_ATTEMPTS):
        rng = _rng(spec.seed, spec.n, attempt)
        pts = np.column_stack(
            (rng.uniform(xmin, xmax, spec.n), rng.uniform(ymin, ymax, spec.n))
        )
        untangled = _untangle(pts, max_swaps)
        if untangled is None or not _features_ok(untangled, diag):
            continue
        try:
            return Polygon(untangled)
        except ValidationError:
            continue  # touching/collinear residue the proper-crossing pass missed
    raise GenerationFailure(
        f"no simple polygon with n={spec.n} after {MAX_ATTEMPTS} attempts (seed {spec.seed})"
    )


def convex_polygon(n: int, seed: int) -> Polygon:
    """Strictly convex n-gon: gap-regularized random angles on a random circle."""
    if n < 3:
        raise ValueError("n must be >= 3")
    rng = _rng(seed, n)
    gaps = rng.random(n) + 0.1
    angles = 2.0 * math.pi * np.cumsum(gaps) / gaps.sum() + rng.uniform(0.0, 2.0 * math.pi)
    radius = rng.uniform(150.0, 240.0)
    cx, cy = 256.0, 256.0
    pts = np.column_stack((cx + radius * np.cos(angles), cy + radius * np.sin(angles)))
    return Polygon(pts)
