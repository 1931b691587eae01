"""Command line: topo, run, sweep, audit.

Exit codes: 0 success, 1 usage or input error, 2 contract or threshold breach.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from .audit import audit_trace
from .election import PROTOCOLS, ProtocolSpec, run_protocol
from .network import RoundCapExceeded
from .sweep import ExperimentSpec, SpecError, breaches, run_sweep, runs_jsonl, stats_csv
from .topology import FAMILIES, TopologyError, TopologySpec, build_topology
from .trace import TraceFormatError, read_trace

def _u64(s: str) -> int:
    v = int(s, 0)
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in 64 unsigned bits")
    return v


def _emit(text: str, path: str | None) -> None:
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_topo(args) -> int:
    t = build_topology(TopologySpec(args.family, args.n, seed=args.seed, p=args.p,
                                    width=args.width, directed=args.directed))
    doc = {"family": args.family, "n": t.n, "directed": t.directed, "D": t.D,
           "seed": args.seed, "edges": t.edge_list()}
    _emit(json.dumps(doc) + "\n", args.out)
    return 0


def cmd_run(args) -> int:
    family = args.family or ("complete" if args.protocol == "single-hop" else "path")
    t = build_topology(TopologySpec(family, args.n, seed=args.topo_seed, p=args.p))
    spec = ProtocolSpec(args.protocol, args.model, args.alpha, args.d, args.round_cap,
                        record="rounds" if args.trace else "none")
    try:
        outcome, trace = run_protocol(t, spec, args.seed)
    except RoundCapExceeded as exc:
        print(f"aborted: {exc}", file=sys.stderr)
        if args.trace and exc.trace is not None:
            exc.trace.write(args.trace)
            print(f"partial trace written to {args.trace}", file=sys.stderr)
        return 2
    if args.trace:
        trace.write(args.trace)
    print(json.dumps(outcome.to_record()))
    return 0 if outcome.success else 2


def cmd_sweep(args) -> int:
    spec = ExperimentSpec.load(args.spec)
    rows, runs = run_sweep(spec)
    _emit(stats_csv(rows), args.out_stats)
    if args.out_runs:
        _emit(runs_jsonl(runs), args.out_runs)
    problems = breaches(spec, rows)
    for p in problems:
        print(f"threshold breach: {p}", file=sys.stderr)
    return 2 if problems else 0


def cmd_audit(args) -> int:
    trace = read_trace(args.trace)
    report = audit_trace(trace)
    _emit(json.dumps(report.to_json(), indent=2) + "\n", args.report)
    print(f"{len(report.violations)} violations, {report.rounds_checked} rounds checked",
          file=sys.stderr)
    return 0 if report.ok else 2


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="radio-election", description=__doc__,
                                 formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("topo", help="generate a topology and print it as JSON")
    p.add_argument("--family", choices=FAMILIES, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float, default=0.1)
    p.add_argument("--width", type=int, default=2)
    p.add_argument("--directed", action="store_true", help="directed cycle")
    p.add_argument("--seed", type=_u64, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_topo)

    p = sub.add_parser("run", help="run one election")
    p.add_argument("--protocol", choices=PROTOCOLS, required=True)
    p.add_argument("--model", choices=("nocd", "cd", "beep"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, help="eccentricity bound assumed by the nodes")
    p.add_argument("--seed", type=_u64, default=0)
    p.add_argument("--alpha", type=int, default=4)
    p.add_argument("--family", choices=FAMILIES)
    p.add_argument("--p", type=float, default=0.1)
    p.add_argument("--topo-seed", type=_u64, default=0)
    p.add_argument("--round-cap", type=int, default=10**7)
    p.add_argument("--trace")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("sweep", help="run a Monte Carlo sweep from a YAML spec")
    p.add_argument("--spec", required=True)
    p.add_argument("--out-stats", required=True)
    p.add_argument("--out-runs")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("audit", help="check a trace against channel semantics and contracts")
    p.add_argument("--trace", required=True)
    p.add_argument("--report")
    p.set_defaults(func=cmd_audit)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 1
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (TopologyError, SpecError, TraceFormatError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
