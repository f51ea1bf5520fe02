"""Particle-filter search for covering guard sets, with binary search on the count.

A particle is one candidate placement of k guards. Each resampling round keeps
the particles whose coverage ratio clears the threshold tau (or the top fifth
when that rule degenerates), and replaces the rest with proposals derived from
surviving particles chosen with probability proportional to coverage. Two
proposal moves are mixed:

  * jitter: every guard of a copied survivor gets isotropic Gaussian noise
    whose scale decays per round, with an occasional uniform re-draw of a
    guard to keep diversity;
  * repair: one guard of the copy, picked among the least-contributing ones,
    is relocated into the survivor's uncovered region, choosing the candidate
    position whose resulting union covers the most.

Blind jitter alone plateaus just below full coverage (a redundant guard would
have to tunnel across the polygon), so the repair move is what closes the
final slivers within the small round budget.

Feasibility of a guard count k is probed by running the filter for a bounded
number of rounds; a bisection over k in [1, floor(n/3)] finds the smallest
count that produced a covering placement. Every random draw comes from a
stream keyed by (seed, k, attempt, round, particle index), so results are
reproducible and independent of evaluation order or parallelism.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from shapely import union_all
from shapely.geometry import Point as _ShapelyPoint
from shapely.geometry import Polygon as _ShapelyPolygon
from shapely.prepared import prep

from .coverage import (
    GRID_CONFIRM_RATIO,
    GRID_CONFIRM_RESOLUTION,
    coverage_ratio,
    grid_coverage_oracle,
)
from .errors import DegeneratePolygon
from .geometry import INSIDE, Polygon
from .visibility import visibility_polygon

_U64 = (1 << 64) - 1


def _rng(seed: int, *path: int) -> np.random.Generator:
    """Independent generator for one point of the (k, attempt, round, particle) tree."""
    return np.random.default_rng([seed & _U64, *path])


@dataclass
class Particle:
    """One candidate solution: k guard points, resampling weight, coverage ratio."""

    guards: list[tuple[float, float]]
    weight: float
    vp: float | None = None  # None until evaluated

    def copy(self) -> "Particle":
        return Particle(list(self.guards), self.weight, self.vp)


@dataclass
class ParticleSet:
    particles: list[Particle]
    vp_max: float = 0.0
    best: Particle | None = None
    # per-probe cache of _ParentInfo keyed by guards tuple (survivors persist
    # across rounds, so their repair geometry is reused)
    repair_cache: dict = field(default_factory=dict, repr=False)

    def __len__(self) -> int:
        return len(self.particles)


@dataclass(frozen=True)
class SolverConfig:
    """All solver tunables. n_particles defaults to ceil(n/3) at solve time."""

    n_particles: int | None = None
    resample_rounds: int = 20
    tau: float = 0.98
    seed: int = 0
    jitter_scale: float = 0.1
    jitter_decay: float = 0.9
    coverage_tol: float = 1e-6
    repair_prob: float = 0.6
    explore_prob: float = 0.1
    repair_candidates: int = 5
    repair_options: int = 3
    workers: int = 1

    def __post_init__(self):
        if self.n_particles is not None and self.n_particles < 1:
            raise ValueError("n_particles must be >= 1")
        if self.resample_rounds < 1:
            raise ValueError("resample_rounds must be >= 1")
        if not 0.0 < self.tau < 1.0:
            raise ValueError("tau must be in (0, 1)")
        if not 0.0 < self.jitter_decay <= 1.0:
            raise ValueError("jitter_decay must be in (0, 1]")
        if self.jitter_scale <= 0.0:
            raise ValueError("jitter_scale must be positive")
        if not 0.0 <= self.repair_prob <= 1.0:
            raise ValueError("repair_prob must be in [0, 1]")
        if not 0.0 <= self.explore_prob < 1.0:
            raise ValueError("explore_prob must be in [0, 1)")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")

    def resolve_particles(self, n_vertices: int) -> int:
        return self.n_particles if self.n_particles is not None else math.ceil(n_vertices / 3)


@dataclass
class ProbeTrace:
    """Per-round record of one feasibility probe at a fixed k."""

    k: int
    attempt: int
    rounds: int
    vp_per_round: list[float]
    covering: bool


@dataclass
class SolveResult:
    k_opt: int
    guards: list[tuple[float, float]]
    covering: bool
    verified: bool
    exact_ratio: float
    grid_ratio: float
    seed: int
    traces: list[ProbeTrace] = field(default_factory=list)

    @property
    def rounds_used(self) -> dict[int, int]:
        """Rounds spent per probed k (a retry probe overwrites the first attempt)."""
        return {t.k: t.rounds for t in self.traces}

    def to_dict(self) -> dict:
        return {
            "k_opt": self.k_opt,
            "guards": [[x, y] for x, y in self.guards],
            "covering": self.covering,
            "verified": self.verified,
            "exact_ratio": self.exact_ratio,
            "grid_ratio": self.grid_ratio,
            "seed": self.seed,
            "probes": [
                {
                    "k": t.k,
                    "attempt": t.attempt,
                    "rounds": t.rounds,
                    "covering": t.covering,
                    "vp_max_per_round": t.vp_per_round,
                }
                for t in self.traces
            ],
        }


def _draw_interior_point(rng: np.random.Generator, P: Polygon) -> tuple[float, float]:
    xmin, ymin, xmax, ymax = P.bbox
    while True:
        x = rng.uniform(xmin, xmax)
        y = rng.uniform(ymin, ymax)
        if P.contains((x, y)) == INSIDE:
            return (float(x), float(y))


def _jitter_point(
    rng: np.random.Generator, P: Polygon, g: tuple[float, float], sigma: float
) -> tuple[float, float]:
    s = sigma
    tries = 0
    while True:
        x = g[0] + s * rng.standard_normal()
        y = g[1] + s * rng.standard_normal()
        if P.contains((x, y)) == INSIDE:
            return (float(x), float(y))
        tries += 1
        if tries % 32 == 0:
            s *= 0.5  # the source guard is interior, so shrinking always terminates


class _ParentInfo:
    """Cached geometry of one surviving particle used by repair proposals."""

    __slots__ = ("covered", "order", "union_without", "clip")

    def __init__(self, P: Polygon, guards: Sequence[tuple[float, float]], clip: _ShapelyPolygon):
        regions = []
        for g in guards:
            shp = _ShapelyPolygon(visibility_polygon(P, g).polygon.vertices)
            regions.append(shp if shp.is_valid else shp.buffer(0))
        k = len(regions)
        empty = _ShapelyPolygon()
        prefix = [empty] * (k + 1)
        suffix = [empty] * (k + 1)
        for i in range(k):
            prefix[i + 1] = regions[i] if i == 0 else prefix[i].union(regions[i])
            j = k - 1 - i
            suffix[j] = regions[j] if j == k - 1 else suffix[j + 1].union(regions[j])
        self.union_without = [prefix[i].union(suffix[i + 1]) for i in range(k)]
        self.covered = prefix[k].area
        self.clip = clip
        marginal = [self.covered - self.union_without[i].area for i in range(k)]
        self.order = sorted(range(k), key=lambda i: (marginal[i], i))


def _sample_in_region(
    region, P: Polygon, rng: np.random.Generator, want: int
) -> list[tuple[float, float]]:
    if region.is_empty or region.area <= 0.0:
        return []
    ready = prep(region)
    minx, miny, maxx, maxy = region.bounds
    out: list[tuple[float, float]] = []
    for _ in range(64 * want):
        x = rng.uniform(minx, maxx)
        y = rng.uniform(miny, maxy)
        if ready.contains(_ShapelyPoint(x, y)) and P.contains((x, y)) == INSIDE:
            out.append((float(x), float(y)))
            if len(out) >= want:
                break
    return out


def _vis_shape(P: Polygon, g: tuple[float, float]) -> _ShapelyPolygon:
    shp = _ShapelyPolygon(visibility_polygon(P, g).polygon.vertices)
    return shp if shp.is_valid else shp.buffer(0)


def _witness_kernel(P: Polygon, region, rng: np.random.Generator, limit: int = 5):
    """Intersection of the visibility polygons of witness points in region.

    Any point of the returned geometry sees every witness, so it concentrates
    candidate placements near positions that can see the whole region. Empty
    when no single guard can (or no witnesses could be sampled).
    """
    pieces = sorted(getattr(region, "geoms", [region]), key=lambda g: -g.area)
    witnesses: list[tuple[float, float]] = []
    for piece in pieces[:3]:
        want = max(1, limit // min(3, len(pieces)))
        witnesses.extend(_sample_in_region(piece, P, rng, want))
        if len(witnesses) >= limit:
            break
    kernel = None
    for w in witnesses[:limit]:
        vis = _vis_shape(P, w)
        kernel = vis if kernel is None else kernel.intersection(vis)
        if kernel.is_empty:
            return None
    return kernel


def _place_guard(
    P: Polygon,
    covered,
    rng: np.random.Generator,
    config: SolverConfig,
    clip: _ShapelyPolygon,
) -> tuple[tuple[float, float], object] | None:
    """Greedy placement of one guard against the currently covered geometry.

    Candidates come from the witness kernel of the uncovered region when one
    guard can plausibly see it all, else from the uncovered region itself;
    the candidate whose union with `covered` is largest wins.
    """
    gap = clip.difference(covered) if covered is not None else clip
    if gap.is_empty or gap.area <= 0.0:
        return None
    candidates: list[tuple[float, float]] = []
    kernel = _witness_kernel(P, gap, rng)
    if kernel is None:
        # The whole gap is not single-guard coverable; aim at its largest piece.
        largest = max(getattr(gap, "geoms", [gap]), key=lambda g: g.area)
        kernel = _witness_kernel(P, largest, rng)
    if kernel is not None and not kernel.is_empty:
        candidates = _sample_in_region(kernel, P, rng, config.repair_candidates)
    if not candidates:
        candidates = _sample_in_region(gap, P, rng, config.repair_candidates)
    if not candidates:
        return None
    best = None
    best_area = -1.0
    best_union = None
    for c in candidates:
        vis = _vis_shape(P, c)
        merged = vis if covered is None else covered.union(vis)
        if merged.area > best_area:
            best, best_union, best_area = c, merged, merged.area
    return best, best_union


def _repair_guards(
    P: Polygon,
    parent: Particle,
    info: _ParentInfo,
    rng: np.random.Generator,
    config: SolverConfig,
) -> list[tuple[float, float]] | None:
    """Ruin-and-recreate move: rebuild the lowest-contribution guards.

    Drops a few guards, biased toward the smallest marginal coverage, and
    re-places them greedily into what the remaining guards leave uncovered,
    using witness-guided candidates. Returns None when nothing could be
    rebuilt.
    """
    k = len(parent.guards)
    u = rng.random()
    ruin = 1 if u < 0.45 else (2 if u < 0.8 else 3)
    ruin = min(ruin, config.repair_options, k)
    if rng.random() < 0.7 or k == 1:
        dropped = info.order[:ruin]
    else:
        dropped = list(rng.choice(k, size=ruin, replace=False))
    if ruin == 1:
        covered = info.union_without[dropped[0]]
    else:
        keep = [g for j, g in enumerate(parent.guards) if j not in dropped]
        covered = None
        for g in keep:
            vis = _vis_shape(P, g)
            covered = vis if covered is None else covered.union(vis)
        if covered is None:
            covered = _ShapelyPolygon()
    guards = [g for j, g in enumerate(parent.guards) if j not in dropped]
    for _ in range(ruin):
        placed = _place_guard(P, covered, rng, config, info.clip)
        if placed is None:
            return None
        guards.append(placed[0])
        covered = placed[1]
    return guards


def init_particles(P: Polygon, k: int, config: SolverConfig, attempt: int = 0) -> ParticleSet:
    """N particles of k i.i.d. uniform interior points each, weights 1/N."""
    if k < 1:
        raise ValueError("k must be >= 1")
    n_particles = config.resolve_particles(P.n)
    particles = []
    for i in range(n_particles):
        rng = _rng(config.seed, k, attempt, 0, i)
        guards = [_draw_interior_point(rng, P) for _ in range(k)]
        particles.append(Particle(guards=guards, weight=1.0 / n_particles))
    return ParticleSet(particles=particles)


def evaluate(P: Polygon, pset: ParticleSet, config: SolverConfig) -> int | None:
    """Compute vp for unevaluated particles; return the first covering index, if any.

    Evaluation short-circuits at the first particle whose coverage reaches
    1 - coverage_tol. With workers > 1 the coverage computations run in a
    thread pool, but bookkeeping stays in index order so the outcome is
    identical to the sequential path.
    """
    full = 1.0 - config.coverage_tol
    particles = pset.particles
    todo = [i for i, p in enumerate(particles) if p.vp is None]

    fresh = None
    if config.workers > 1 and todo:
        with ThreadPoolExecutor(max_workers=config.workers) as pool:
            ratios = list(pool.map(lambda i: coverage_ratio(P, particles[i].guards).ratio, todo))
        fresh = dict(zip(todo, ratios))

    covering_idx = None
    for i, p in enumerate(particles):
        if p.vp is None:
            p.vp = fresh[i] if fresh is not None else coverage_ratio(P, p.guards).ratio
        if p.vp > pset.vp_max or pset.best is None:
            pset.vp_max = p.vp
            pset.best = p.copy()
        if p.vp >= full:
            covering_idx = i
            break

    # Keep state identical across worker counts: drop speculative results
    # computed past the short-circuit point.
    if covering_idx is not None and fresh is not None:
        for j in fresh:
            if j > covering_idx:
                particles[j].vp = None

    if covering_idx is None:
        total = sum(p.vp for p in particles)
        if total > 0.0:
            for p in particles:
                p.weight = p.vp / total
    return covering_idx


def resample(
    P: Polygon,
    pset: ParticleSet,
    config: SolverConfig,
    round_index: int,
    k: int,
    attempt: int = 0,
) -> ParticleSet:
    """Replace sub-threshold particles with proposals seeded by survivors.

    Survivors are the particles with vp >= tau. When that rule degenerates
    (no particle qualifies, or every one does, which would halt reproduction),
    the top fifth by vp survive instead so the filter keeps proposing. Each
    replacement copies a survivor chosen with probability proportional to vp
    and is either repaired (one weak guard moved into the survivor's
    uncovered region) or jittered guard-by-guard with Gaussian noise of scale
    jitter_scale * jitter_decay**round * bbox diagonal, redrawn until guards
    land strictly inside the polygon. The population size never changes and
    the best particle always survives unperturbed.
    """
    particles = pset.particles
    n = len(particles)
    survivor_idx = [i for i, p in enumerate(particles) if p.vp is not None and p.vp >= config.tau]
    min_slots = max(1, math.ceil(n / 5))
    ranked = sorted(range(n), key=lambda i: (-(particles[i].vp or 0.0), i))
    if not survivor_idx or len(survivor_idx) == n:
        survivor_idx = sorted(ranked[:min_slots])
    elif n - len(survivor_idx) < min_slots:
        # A near-saturated population would stop proposing; demote the weakest
        # survivors so each round keeps at least a fifth of the slots churning.
        survivor_idx = sorted(ranked[: max(1, n - min_slots)])

    vps = np.array([particles[i].vp or 0.0 for i in survivor_idx], dtype=float)
    if vps.sum() <= 0.0:
        vps = np.ones_like(vps)
    cum = np.cumsum(vps / vps.sum())

    sigma = config.jitter_scale * (config.jitter_decay**round_index) * P.bbox_diagonal
    survivors = set(survivor_idx)
    clip = _ShapelyPolygon(P.vertices)
    cache = pset.repair_cache
    # Repair proposals dominate the cost of large populations; past a handful
    # per round they mostly duplicate each other, so the rest fall back to the
    # cheap jitter kernel.
    repair_budget = max(4, n // 5)
    for i in range(n):
        if i in survivors:
            continue
        rng = _rng(config.seed, k, attempt, round_index, i)
        pick = min(int(np.searchsorted(cum, rng.random())), len(survivor_idx) - 1)
        src = particles[survivor_idx[pick]]

        guards = None
        if rng.random() < config.repair_prob and repair_budget > 0:
            repair_budget -= 1
            key = tuple(src.guards)
            info = cache.get(key)
            if info is None:
                info = cache[key] = _ParentInfo(P, src.guards, clip)
            guards = _repair_guards(P, src, info, rng, config)
        if guards is None:
            guards = [
                _draw_interior_point(rng, P)
                if rng.random() < config.explore_prob
                else _jitter_point(rng, P, g, sigma)
                for g in src.guards
            ]
        particles[i] = Particle(guards=guards, weight=1.0 / n)
    if len(cache) > 64:
        for key in list(cache)[: len(cache) - 64]:
            del cache[key]
    return pset


def feasible_k(
    P: Polygon, k: int, config: SolverConfig, attempt: int = 0
) -> tuple[bool, Particle, ProbeTrace]:
    """Probe whether k guards can cover P within the round budget.

    Returns (True, covering particle, trace) on success, else (False, best
    particle seen, trace). The best-so-far coverage is non-decreasing across
    rounds because the best particle survives resampling unperturbed.
    """
    pset = init_particles(P, k, config, attempt)
    vp_per_round: list[float] = []
    rounds = config.resample_rounds
    for j in range(1, rounds + 1):
        covering_idx = evaluate(P, pset, config)
        vp_per_round.append(pset.vp_max)
        if covering_idx is not None:
            trace = ProbeTrace(k=k, attempt=attempt, rounds=j, vp_per_round=vp_per_round, covering=True)
            return True, pset.particles[covering_idx].copy(), trace
        if j < rounds:
            resample(P, pset, config, j, k, attempt)
    trace = ProbeTrace(k=k, attempt=attempt, rounds=rounds, vp_per_round=vp_per_round, covering=False)
    assert pset.best is not None
    return False, pset.best.copy(), trace


def solve_min_guards(P: Polygon, config: SolverConfig | None = None) -> SolveResult:
    """Smallest guard count whose probe produced a covering placement.

    Bisection over k in [1, floor(n/3)]: a covering probe moves the upper
    bound down, a failed probe moves the lower bound up. If no probe covers,
    k = floor(n/3) is retried once with fresh particles; the Chvatal bound
    guarantees a cover exists there even when the heuristic misses it, in
    which case the result is flagged unverified.
    """
    if not isinstance(P, Polygon):
        raise DegeneratePolygon("solve_min_guards needs a Polygon")
    config = config or SolverConfig()
    ceiling = max(1, P.n // 3)

    traces: list[ProbeTrace] = []
    best_cover: tuple[int, Particle] | None = None
    lo, hi = 1, ceiling
    while lo <= hi:
        k = (lo + hi) // 2
        ok, particle, trace = feasible_k(P, k, config)
        traces.append(trace)
        if ok:
            best_cover = (k, particle)
            hi = k - 1
        else:
            lo = k + 1

    covering = best_cover is not None
    if best_cover is None:
        ok, particle, trace = feasible_k(P, ceiling, config, attempt=1)
        traces.append(trace)
        covering = ok
        best_cover = (ceiling, particle)

    k_opt, particle = best_cover
    exact = coverage_ratio(P, particle.guards)
    grid = grid_coverage_oracle(P, particle.guards, GRID_CONFIRM_RESOLUTION)
    verified = exact.ratio >= 1.0 - config.coverage_tol and grid.ratio >= GRID_CONFIRM_RATIO
    return SolveResult(
        k_opt=k_opt,
        guards=list(particle.guards),
        covering=covering,
        verified=verified,
        exact_ratio=exact.ratio,
        grid_ratio=grid.ratio,
        seed=config.seed,
        traces=traces,
    )
