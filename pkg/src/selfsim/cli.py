"""Command line interface: ``selfsim {simulate,hull,wind,experiment,selfcheck}``.

Exit codes: 0 success (all verdicts pass), 2 verdict failure, 3 bad
configuration or input, 4 runtime or generator error.
"""
from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path as FsPath

from . import __version__
from .config import GENERATORS, SIGMA_KINDS, ExperimentConfig, parse_config
from .csvio import read_path_csv, write_events_csv, write_path_csv, write_sweep_csv, write_timeline_csv
from .errors import (
    AmbiguousStep,
    ConfigError,
    FactorizationFailure,
    OriginTooClose,
    SelfSimError,
)
from .experiments import generate_paths, run_experiment
from .hull import incremental_hull_timeline
from .process import Path, uniform_grid
from .selfcheck import run_selfcheck
from .stable import lepage_events
from .winding import sweep_at_infinity, sweep_near_zero

EXIT_OK, EXIT_VERDICT, EXIT_CONFIG, EXIT_RUNTIME = 0, 2, 3, 4

_RUNTIME_ERRORS = (OriginTooClose, AmbiguousStep, FactorizationFailure)


def _floats(text: str) -> tuple:
    try:
        return tuple(float(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma separated numbers, got {text!r}")


def _out(target):
    return sys.stdout if target in (None, "-") else target


def _in(source):
    return sys.stdin if source in (None, "-") else source


def _cmd_simulate(args) -> int:
    cfg = ExperimentConfig(
        experiment="interior_prob", generator=args.generator, hindex=args.hindex,
        dim=args.dim, alpha=args.alpha, sigma=args.sigma, scale=args.scale,
        truncation=args.truncation, resolution=args.resolution, horizon=args.horizon,
    )
    grid = uniform_grid(args.resolution, args.horizon)
    path = Path(grid, generate_paths(cfg, grid, [args.seed])[0])
    write_path_csv(path, _out(args.out))
    if args.events:
        if cfg.generator != "stable":
            raise ConfigError("--events needs the stable generator")
        write_events_csv(lepage_events(cfg.build_spec(), args.seed), args.events)
    return EXIT_OK


def _cmd_hull(args) -> int:
    path = read_path_csv(_in(args.path))
    if path.dim != 2:
        raise ConfigError("hull timelines are computed for planar paths only")
    write_timeline_csv(incremental_hull_timeline(path), _out(args.out))
    return EXIT_OK


def _cmd_wind(args) -> int:
    path = read_path_csv(_in(args.path))
    if path.dim != 2:
        raise ConfigError("winding is defined for planar paths only")
    if args.levels is not None:
        levels = list(args.levels)
    elif args.mode == "zero":
        levels = [args.anchor * math.exp(-k) for k in range(1, args.count + 1)]
    else:
        levels = [args.anchor * math.exp(k) for k in range(1, args.count + 1)]
    path = path.positive_part()
    try:
        if args.mode == "zero":
            recs = sweep_near_zero(path, args.anchor, levels, args.guard)
        else:
            recs = sweep_at_infinity(path, args.anchor, levels, args.guard)
    except KeyError as exc:  # a level or the anchor is not a grid time
        raise ConfigError(str(exc)) from None
    write_sweep_csv(recs, _out(args.out))
    return EXIT_OK


def _cmd_experiment(args) -> int:
    text = FsPath(args.config).read_text(encoding="utf-8")
    cfg = parse_config(text, master_seed=args.seed, replicates=args.replicates,
                       resolution=args.resolution, workers=args.workers)
    report = run_experiment(cfg)
    js = report.to_json()
    if args.out in (None, "-"):
        sys.stdout.write(js + "\n")
    else:
        FsPath(args.out).write_text(js + "\n", encoding="utf-8")
    if args.csv:
        FsPath(args.csv).write_text(report.aggregates_csv(), encoding="utf-8")
    for name, ok in sorted(report.verdicts.items()):
        print(f"{'PASS' if ok else 'FAIL'}  {name}", file=sys.stderr)
    print(f"replicates: {report.aggregates['replicates_ok']} ok, "
          f"{report.aggregates['replicates_failed']} failed; "
          f"{report.wall_clock_seconds:.1f} s", file=sys.stderr)
    return EXIT_OK if report.passed else EXIT_VERDICT


def _cmd_selfcheck(args) -> int:
    results = run_selfcheck()
    for name, ok, msg in results:
        print(f"{'PASS' if ok else 'FAIL'}  {name}" + (f"  ({msg})" if msg else ""))
    return EXIT_OK if all(ok for _, ok, _ in results) else EXIT_VERDICT


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="selfsim", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("simulate", help="sample one path and write it as CSV")
    s.add_argument("--generator", choices=GENERATORS, default="fbm")
    s.add_argument("--hindex", type=float, default=0.5)
    s.add_argument("--dim", type=int, default=2)
    s.add_argument("--alpha", type=float, default=1.5)
    s.add_argument("--sigma", choices=SIGMA_KINDS[:3], default="uniform-sphere")
    s.add_argument("--scale", type=float, default=1.0)
    s.add_argument("--truncation", type=int, default=10_000)
    s.add_argument("--resolution", type=int, default=1024)
    s.add_argument("--horizon", type=float, default=1.0)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out", help="output CSV (default stdout)")
    s.add_argument("--events", help="also write the LePage event list to this CSV")
    s.set_defaults(func=_cmd_simulate)

    h = sub.add_parser("hull", help="path CSV -> hull timeline CSV")
    h.add_argument("path", nargs="?", help="path CSV (default stdin)")
    h.add_argument("--out")
    h.set_defaults(func=_cmd_hull)

    w = sub.add_parser("wind", help="path CSV -> winding sweep CSV")
    w.add_argument("path", nargs="?", help="path CSV (default stdin)")
    w.add_argument("--mode", choices=("zero", "infinity"), default="infinity")
    w.add_argument("--anchor", type=float, default=1.0,
                   help="fixed endpoint: t for --mode zero, s for --mode infinity")
    w.add_argument("--levels", type=_floats,
                   help="comma separated grid times; default anchor * e^(-/+k)")
    w.add_argument("--count", type=int, default=8, help="number of default levels")
    w.add_argument("--guard", type=float, default=None, help="minimum radius guard")
    w.add_argument("--out")
    w.set_defaults(func=_cmd_wind)

    e = sub.add_parser("experiment", help="run an experiment config, emit a JSON report")
    e.add_argument("config")
    e.add_argument("--seed", type=int, help="override master_seed")
    e.add_argument("--replicates", type=int)
    e.add_argument("--resolution", type=int)
    e.add_argument("--workers", type=int)
    e.add_argument("--out", help="JSON report path (default stdout)")
    e.add_argument("--csv", help="aggregates CSV path")
    e.set_defaults(func=_cmd_experiment)

    c = sub.add_parser("selfcheck", help="run the built-in exact checks")
    c.set_defaults(func=_cmd_selfcheck)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_CONFIG
    try:
        return args.func(args)
    except _RUNTIME_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    except (SelfSimError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except Exception as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
