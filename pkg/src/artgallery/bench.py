"""Benchmark and parameter-sweep harnesses over seeded random polygons.

run_benchmark regenerates a seeded corpus per size, solves every instance,
verifies each solution with the independent grid oracle, and aggregates.
Wall-clock seconds are measured and reported in the summary, but the
per-instance CSV zeroes the seconds column unless timing is requested, so
identical inputs produce byte-identical CSV output.
"""

from __future__ import annotations

import io
import time
from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np

from .geometry import Polygon
from .polygen import GenSpec, random_simple_polygon
from .solver import SolverConfig, SolveResult, solve_min_guards

_U64 = (1 << 64) - 1


def instance_seed(base_seed: int, n: int, trial: int) -> int:
    """Well-mixed deterministic seed for one benchmark instance."""
    seq = np.random.SeedSequence([base_seed & _U64, n, trial])
    return int(seq.generate_state(1, np.uint64)[0])


@dataclass(frozen=True)
class BenchRow:
    n: int
    seed: int
    k_opt: int  # -1 when the instance failed
    verified: bool
    mean_rounds: float
    seconds: float
    error: str | None = None


@dataclass(frozen=True)
class SizeSummary:
    n: int
    trials: int
    mean_k_opt: float
    min_k_opt: int
    max_k_opt: int
    mean_seconds: float
    verified_count: int


@dataclass(frozen=True)
class BenchReport:
    rows: list[BenchRow]
    summaries: list[SizeSummary]


def run_benchmark(sizes: Sequence[int], trials: int, config: SolverConfig | None = None) -> BenchReport:
    """Solve `trials` seeded random polygons per size and aggregate."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    config = config or SolverConfig()
    rows: list[BenchRow] = []
    for n in sorted(set(sizes)):
        for trial in range(trials):
            seed = instance_seed(config.seed, n, trial)
            t0 = time.perf_counter()
            try:
                poly = random_simple_polygon(GenSpec(n=n, seed=seed))
                result = solve_min_guards(poly, replace(config, seed=seed))
                elapsed = time.perf_counter() - t0
                mean_rounds = float(np.mean([t.rounds for t in result.traces]))
                rows.append(
                    BenchRow(
                        n=n,
                        seed=seed,
                        k_opt=result.k_opt,
                        verified=result.verified,
                        mean_rounds=mean_rounds,
                        seconds=elapsed,
                    )
                )
            except Exception as exc:  # record and continue with the batch
                elapsed = time.perf_counter() - t0
                rows.append(
                    BenchRow(
                        n=n,
                        seed=seed,
                        k_opt=-1,
                        verified=False,
                        mean_rounds=0.0,
                        seconds=elapsed,
                        error=f"{type(exc).__name__}: {exc}",
                    )
                )
    rows.sort(key=lambda r: (r.n, r.seed))

    summaries = []
    for n in sorted({r.n for r in rows}):
        good = [r for r in rows if r.n == n and r.k_opt > 0]
        group = [r for r in rows if r.n == n]
        summaries.append(
            SizeSummary(
                n=n,
                trials=len(group),
                mean_k_opt=float(np.mean([r.k_opt for r in good])) if good else float("nan"),
                min_k_opt=min((r.k_opt for r in good), default=-1),
                max_k_opt=max((r.k_opt for r in good), default=-1),
                mean_seconds=float(np.mean([r.seconds for r in group])),
                verified_count=sum(r.verified for r in group),
            )
        )
    return BenchReport(rows=rows, summaries=summaries)


def bench_csv(report: BenchReport, timing: bool = False) -> str:
    """Per-instance CSV. Seconds are zeroed unless timing=True (reproducible bytes)."""
    out = io.StringIO()
    out.write("n,seed,k_opt,verified,mean_vp_trace_rounds,seconds\n")
    for r in report.rows:
        secs = f"{r.seconds:.3f}" if timing else "0.000"
        out.write(f"{r.n},{r.seed},{r.k_opt},{str(r.verified).lower()},{r.mean_rounds:.2f},{secs}\n")
    return out.getvalue()


def summary_csv(report: BenchReport) -> str:
    out = io.StringIO()
    out.write("n,trials,mean_k_opt,min_k_opt,max_k_opt,mean_seconds,verified_count\n")
    for s in report.summaries:
        out.write(
            f"{s.n},{s.trials},{s.mean_k_opt:.2f},{s.min_k_opt},{s.max_k_opt},"
            f"{s.mean_seconds:.3f},{s.verified_count}\n"
        )
    return out.getvalue()


@dataclass(frozen=True)
class SweepCell:
    particles: int
    tau: float
    k_opt: int
    verified: bool
    seconds: float
    error: str | None = None


def run_sweep(
    P: Polygon,
    particle_counts: Sequence[int],
    taus: Sequence[float],
    config: SolverConfig | None = None,
) -> list[SweepCell]:
    """Solve P once per (N, tau) grid cell, recording k_opt and wall-clock time."""
    if not particle_counts or not taus:
        raise ValueError("particle_counts and taus must be non-empty")
    config = config or SolverConfig()
    cells = []
    for n_particles in sorted(set(particle_counts)):
        for tau in sorted(set(taus)):
            cell_config = replace(config, n_particles=int(n_particles), tau=float(tau))
            t0 = time.perf_counter()
            try:
                result: SolveResult = solve_min_guards(P, cell_config)
                cells.append(
                    SweepCell(
                        particles=int(n_particles),
                        tau=float(tau),
                        k_opt=result.k_opt,
                        verified=result.verified,
                        seconds=time.perf_counter() - t0,
                    )
                )
            except Exception as exc:
                cells.append(
                    SweepCell(
                        particles=int(n_particles),
                        tau=float(tau),
                        k_opt=-1,
                        verified=False,
                        seconds=time.perf_counter() - t0,
                        error=f"{type(exc).__name__}: {exc}",
                    )
                )
    return cells


def sweep_csv(cells: Sequence[SweepCell]) -> str:
    out = io.StringIO()
    out.write("particles,tau,k_opt,verified,seconds\n")
    for c in cells:
        out.write(f"{c.particles},{c.tau:g},{c.k_opt},{str(c.verified).lower()},{c.seconds:.3f}\n")
    return out.getvalue()
