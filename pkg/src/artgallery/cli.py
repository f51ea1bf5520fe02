"""Command-line interface.

Subcommands: solve, verify, vis, gen, bench, sweep, render. Exit codes:
0 success, 1 usage error, 2 parse/validation error, 3 solver finished at the
ceiling without a certified cover. ARTGALLERY_SEED sets the default seed;
an explicit --seed always wins.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .bench import bench_csv, run_benchmark, run_sweep, summary_csv, sweep_csv
from .coverage import coverage_ratio, grid_coverage_oracle
from .errors import ArtGalleryError
from .fileio import parse_guards, parse_polygon, render_svg, serialize_polygon
from .polygen import GenSpec, random_simple_polygon
from .solver import SolverConfig, solve_min_guards
from .visibility import visibility_polygon

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INVALID = 2
EXIT_UNCERTIFIED = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage problems exit 1, not argparse's 2
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _default_seed() -> int:
    raw = os.environ.get("ARTGALLERY_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        print(f"warning: ignoring non-integer ARTGALLERY_SEED={raw!r}", file=sys.stderr)
        return 0


def _point(text: str) -> tuple[float, float]:
    try:
        x, y = text.split(",")
        return (float(x), float(y))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected 'x,y', got {text!r}") from exc


def _read(path: str) -> bytes:
    return Path(path).read_bytes()


def _emit(data: bytes | str, out: str | None) -> None:
    if isinstance(data, str):
        data = data.encode("utf-8")
    if out:
        Path(out).write_bytes(data)
    else:
        sys.stdout.buffer.write(data)


def _add_solver_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--particles", type=int, default=None, help="particle count N (default: ceil(n/3))")
    p.add_argument("--tau", type=float, default=0.98, help="survival threshold (default 0.98)")
    p.add_argument("--rounds", type=int, default=20, help="resampling rounds per probe (default 20)")
    p.add_argument("--seed", type=int, default=None, help="RNG seed (default: $ARTGALLERY_SEED or 0)")
    p.add_argument("--jitter", type=float, default=0.1, help="initial jitter sigma as bbox-diagonal fraction")
    p.add_argument("--jitter-decay", type=float, default=0.9, help="per-round jitter decay factor")
    p.add_argument("--workers", type=int, default=1, help="threads for particle evaluation")


def _config(args) -> SolverConfig:
    seed = args.seed if args.seed is not None else _default_seed()
    return SolverConfig(
        n_particles=args.particles,
        resample_rounds=args.rounds,
        tau=args.tau,
        seed=seed,
        jitter_scale=args.jitter,
        jitter_decay=args.jitter_decay,
        workers=args.workers,
    )


def build_parser() -> _Parser:
    parser = _Parser(prog="artgallery", description="Minimum point-guard placement in simple polygons")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="find a near-minimum covering guard set")
    p.add_argument("polygon", help="polygon JSON file")
    _add_solver_flags(p)
    p.add_argument("--out", help="write result JSON here instead of stdout")
    p.add_argument("--svg", help="also render the solution to this SVG file")

    p = sub.add_parser("verify", help="check coverage of a given guard set")
    p.add_argument("polygon")
    p.add_argument("guards", help="guards JSON file")
    p.add_argument("--resolution", type=int, default=256, help="grid oracle resolution (default 256)")
    p.add_argument("--out")

    p = sub.add_parser("vis", help="visibility polygon of an interior point")
    p.add_argument("polygon")
    p.add_argument("--point", type=_point, required=True, metavar="X,Y")
    p.add_argument("--out")
    p.add_argument("--svg")

    p = sub.add_parser("gen", help="generate seeded random simple polygons")
    p.add_argument("--n", type=int, required=True, help="vertex count")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--count", type=int, default=1, help="number of polygons (default 1)")
    p.add_argument("--out-dir", help="write poly_<n>_<i>.json files here")
    p.add_argument("--out", help="write a single polygon here (count must be 1)")

    p = sub.add_parser("bench", help="solve seeded random corpora and report")
    p.add_argument("--sizes", type=int, nargs="+", required=True)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--timing", action="store_true", help="put wall-clock seconds in the CSV (breaks byte reproducibility)")
    p.add_argument("--out", help="instance CSV path (default stdout)")
    p.add_argument("--summary", help="summary CSV path (default stderr)")

    p = sub.add_parser("sweep", help="parameter sweep over particle counts and thresholds")
    p.add_argument("polygon")
    p.add_argument("--particles", type=int, nargs="+", required=True)
    p.add_argument("--taus", type=float, nargs="+", required=True)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out")

    p = sub.add_parser("render", help="render a polygon (and optional guards) to SVG")
    p.add_argument("polygon")
    p.add_argument("--guards", help="guards JSON file")
    p.add_argument("--shade", action="store_true", help="shade the guards' visibility regions")
    p.add_argument("--out")

    return parser


def _cmd_solve(args) -> int:
    poly = parse_polygon(_read(args.polygon))
    result = solve_min_guards(poly, _config(args))
    _emit(json.dumps(result.to_dict(), indent=2) + "\n", args.out)
    if args.svg:
        regions = [visibility_polygon(poly, g).polygon for g in result.guards]
        Path(args.svg).write_bytes(render_svg(poly, result.guards, regions))
    if not (result.covering and result.verified):
        return EXIT_UNCERTIFIED
    return EXIT_OK


def _cmd_verify(args) -> int:
    poly = parse_polygon(_read(args.polygon))
    guards = parse_guards(_read(args.guards))
    exact = coverage_ratio(poly, guards)
    grid = grid_coverage_oracle(poly, guards, args.resolution)
    doc = {
        "exact_union": {"ratio": exact.ratio, "covered_area": exact.covered_area},
        "grid_estimate": {
            "ratio": grid.ratio,
            "covered_area": grid.covered_area,
            "resolution": args.resolution,
            "sample_count": grid.sample_count,
        },
    }
    _emit(json.dumps(doc, indent=2) + "\n", args.out)
    return EXIT_OK


def _cmd_vis(args) -> int:
    poly = parse_polygon(_read(args.polygon))
    region = visibility_polygon(poly, args.point)
    doc = {
        "source": list(region.source),
        "area": region.polygon.area,
        "area_fraction": region.polygon.area / poly.area,
        "vertices": [[float(x), float(y)] for x, y in region.polygon.vertices],
    }
    _emit(json.dumps(doc, indent=2) + "\n", args.out)
    if args.svg:
        Path(args.svg).write_bytes(render_svg(poly, [region.source], [region.polygon]))
    return EXIT_OK


def _cmd_gen(args) -> int:
    seed = args.seed if args.seed is not None else _default_seed()
    if args.count < 1:
        print("gen: --count must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    if args.out and args.count != 1:
        print("gen: --out requires --count 1 (use --out-dir for batches)", file=sys.stderr)
        return EXIT_USAGE
    polys = [
        random_simple_polygon(GenSpec(n=args.n, seed=seed + i)) for i in range(args.count)
    ]
    if args.out_dir:
        out_dir = Path(args.out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        for i, poly in enumerate(polys):
            name = f"poly_{args.n}_{seed + i}"
            (out_dir / f"{name}.json").write_bytes(serialize_polygon(poly, name=name))
        print(f"wrote {len(polys)} polygons to {out_dir}", file=sys.stderr)
    else:
        for i, poly in enumerate(polys):
            _emit(serialize_polygon(poly, name=f"poly_{args.n}_{seed + i}"), args.out)
    return EXIT_OK


def _cmd_bench(args) -> int:
    seed = args.seed if args.seed is not None else _default_seed()
    config = SolverConfig(seed=seed)
    report = run_benchmark(args.sizes, args.trials, config)
    _emit(bench_csv(report, timing=args.timing), args.out)
    summary = summary_csv(report)
    if args.summary:
        Path(args.summary).write_text(summary)
    else:
        sys.stderr.write(summary)
    failures = [r for r in report.rows if r.k_opt < 0 or not r.verified]
    if failures:
        for r in failures:
            note = r.error or "solution not certified by both coverage paths"
            print(f"flagged: n={r.n} seed={r.seed}: {note}", file=sys.stderr)
        return EXIT_UNCERTIFIED
    return EXIT_OK


def _cmd_sweep(args) -> int:
    poly = parse_polygon(_read(args.polygon))
    seed = args.seed if args.seed is not None else _default_seed()
    cells = run_sweep(poly, args.particles, args.taus, SolverConfig(seed=seed))
    _emit(sweep_csv(cells), args.out)
    return EXIT_OK if all(c.k_opt > 0 for c in cells) else EXIT_UNCERTIFIED


def _cmd_render(args) -> int:
    poly = parse_polygon(_read(args.polygon))
    guards = parse_guards(_read(args.guards)) if args.guards else []
    regions = None
    if args.shade and guards:
        regions = [visibility_polygon(poly, g).polygon for g in guards]
    _emit(render_svg(poly, guards, regions), args.out)
    return EXIT_OK


_COMMANDS = {
    "solve": _cmd_solve,
    "verify": _cmd_verify,
    "vis": _cmd_vis,
    "gen": _cmd_gen,
    "bench": _cmd_bench,
    "sweep": _cmd_sweep,
    "render": _cmd_render,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return _COMMANDS[args.command](args)
    except ArtGalleryError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
