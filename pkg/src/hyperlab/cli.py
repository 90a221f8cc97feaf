"""Command-line front end.

Subcommands:

* ``hyperlab suite --suite <name> [--config f] [--out f] [--format json|csv]
  [--seed k]`` runs one named verification suite (or ``--suite all``);
  ``--bench`` switches to the kernel benchmark. Bare flags without a
  subcommand are treated as ``suite`` flags, so
  ``hyperlab --suite ex4-2`` works as-is.
* ``hyperlab space gen --family <kind> --params N=10 [--seed k] --out f``
  writes a generated space in the space file format; named subset sequences
  can be exported with ``--sequence name --collection-out f``.
* ``hyperlab fixedpoint --space f --map f [--nmax 64] [--trace out.json]``
  runs the staged residual search and writes the trace, including the image
  assignment's modulus profile.
* ``hyperlab bench [--n 10000] [--seeds 0,1] [--out f]`` emits per-run
  kernel records as JSON lines.

Exit code is 0 iff nothing failed.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .bench import emit_records, run_bench, summarize
from .errors import HyperlabError
from .families import KINDS, FamilySpec, generate, sequence
from .fixedpoint import almost_fixed_point_search, multimap_modulus
from .io import (
    parse_config_file,
    parse_map_file,
    parse_space_file,
    write_collection_file,
    write_space_file,
)
from .suites import SUITE_NAMES, emit_report, run_suite


def _suite_parser(sub):
    p = sub.add_parser("suite", help="run a named verification suite")
    p.add_argument("--suite", help=f"one of: {', '.join(SUITE_NAMES)}, or 'all'")
    p.add_argument("--config", help="flat key=value config file")
    p.add_argument("--out", help="report file path")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--seed", type=int, help="override the config seed")
    p.add_argument("--bench", action="store_true",
                   help="run the kernel benchmark instead of a suite")
    p.set_defaults(func=_cmd_suite)
    return p


def _cmd_suite(args) -> int:
    if args.bench:
        return _cmd_bench(args)
    if not args.suite:
        print("error: --suite is required (or --bench)", file=sys.stderr)
        return 2
    config = parse_config_file(args.config) if args.config else {}
    if args.seed is not None:
        config["seed"] = str(args.seed)
    names = SUITE_NAMES if args.suite == "all" else (args.suite,)
    results = []
    for name in names:
        result = run_suite(name, config)
        results.append(result)
        for c in result.checks:
            print(
                f"{result.suite}/{c.name}: {c.status}"
                f"  measured={list(c.measured)} expected={list(c.expected)}"
                f" tol={c.tolerance:g}"
            )
    text = emit_report(results, fmt=args.format, path=args.out)
    if args.out:
        print(f"wrote {args.out}")
    else:
        sys.stdout.write(text if args.format == "csv" else "")
    return 1 if any(r.failed for r in results) else 0


def _space_parser(sub):
    p = sub.add_parser("space", help="space file utilities")
    inner = p.add_subparsers(dest="space_cmd", required=True)
    g = inner.add_parser("gen", help="generate a family space")
    g.add_argument("--family", required=True,
                   help=f"one of: {', '.join(k.lower() for k in KINDS)}")
    g.add_argument("--params", default="",
                   help="comma-separated k=v integers, e.g. N=10 or M=5,N=50")
    g.add_argument("--seed", type=int, default=None)
    g.add_argument("--out", required=True, help="space file to write")
    g.add_argument("--sequence", help="also export this named subset sequence")
    g.add_argument("--collection-out", help="collection file for --sequence")
    g.set_defaults(func=_cmd_space_gen)


def _cmd_space_gen(args) -> int:
    params = {}
    if args.params:
        for item in args.params.replace(",", " ").split():
            key, sep, value = item.partition("=")
            if not sep:
                print(f"error: bad --params item {item!r}", file=sys.stderr)
                return 2
            params[key.strip()] = int(value)
    bundle = generate(FamilySpec(args.family.upper(), params, seed=args.seed))
    write_space_file(bundle.space, args.out)
    print(f"wrote {args.out} (n={bundle.space.n})")
    if args.sequence:
        seq = sequence(bundle, args.sequence)
        target = args.collection_out or (args.out + ".collection")
        members = seq if isinstance(seq, tuple) else []
        if not members:
            print("error: --sequence names a point sequence, not subsets",
                  file=sys.stderr)
            return 2
        write_collection_file(members, target)
        print(f"wrote {target} ({len(members)} subsets)")
    return 0


def _fixedpoint_parser(sub):
    p = sub.add_parser("fixedpoint", help="staged residual search over a map file")
    p.add_argument("--space", required=True)
    p.add_argument("--map", required=True)
    p.add_argument("--nmax", type=int, default=64)
    p.add_argument("--trace", help="JSON trace output path")
    p.set_defaults(func=_cmd_fixedpoint)


def _cmd_fixedpoint(args) -> int:
    space = parse_space_file(args.space)
    mapping = parse_map_file(args.map, space)
    trace = almost_fixed_point_search(mapping, n_max=args.nmax)
    profile = multimap_modulus(mapping)
    payload = {
        "space": str(args.space),
        "map": str(args.map),
        "n_max": args.nmax,
        "steps": [[s.stage, s.point, s.gap] for s in trace.steps],
        "outcome": trace.outcome,
        "final_residual": trace.final_gap,
        "failed_stage": trace.failed_stage,
        "map_modulus": [[t, om] for t, om in profile.samples],
    }
    text = json.dumps(payload, indent=2) + "\n"
    if args.trace:
        Path(args.trace).write_text(text)
        print(f"wrote {args.trace}")
    else:
        sys.stdout.write(text)
    if trace.outcome is not None:
        print(f"fixed point: index {trace.outcome} "
              f"(label {space.labels[trace.outcome]})")
    else:
        print(f"no fixed point found; failed stage: {trace.failed_stage}")
    return 0


def _bench_parser(sub):
    p = sub.add_parser("bench", help="kernel benchmark on clustered point sets")
    p.add_argument("--n", type=int, default=10_000)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--seeds", default="0", help="comma-separated seed list")
    p.add_argument("--out", help="JSONL records path")
    p.set_defaults(func=_cmd_bench)


def _cmd_bench(args) -> int:
    n = getattr(args, "n", 10_000)
    m = getattr(args, "m", None)
    seeds = tuple(
        int(s) for s in str(getattr(args, "seeds", "0")).split(",") if s != ""
    )
    records = run_bench(n=n, m=m, seeds=seeds)
    text = emit_records(records, path=getattr(args, "out", None))
    if getattr(args, "out", None):
        print(f"wrote {args.out}")
    else:
        sys.stdout.write(text)
    stats = summarize(records)
    print(
        f"kernel={stats['kernel']} visit_ratio={stats['visit_ratio']:.4f} "
        f"speedup={stats['speedup']:.2f}x over {stats['runs']} run(s)"
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hyperlab",
        description="Hausdorff hyperspace toolkit: suites, spaces, searches, benchmarks",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command")
    _suite_parser(sub)
    _space_parser(sub)
    _fixedpoint_parser(sub)
    _bench_parser(sub)
    return parser


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    # bare flags mean "suite": `hyperlab --suite ex4-2 --bench` etc.
    if argv and argv[0].startswith("--") and argv[0] != "--version":
        argv.insert(0, "suite")
    parser = build_parser()
    args = parser.parse_args(argv)
    if not getattr(args, "func", None):
        parser.print_help()
        return 2
    try:
        return args.func(args)
    except HyperlabError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
