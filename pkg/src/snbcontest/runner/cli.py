"""Command line entry point: ``engine run`` and ``engine curate``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from pathlib import Path

from ..errors import EngineError
from ..ingest import load_directory
from .curate import curate_parameters
from .queryfile import format_workload, parse_query_file, verify_answers
from .workload import run_workload

log = logging.getLogger("snbcontest")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="engine", description="SIGMOD 2014 contest query engine")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="evaluate a query file")
    run.add_argument("--data", required=True, type=Path, help="directory with the CSV dump")
    run.add_argument("--queries", required=True, type=Path)
    run.add_argument("--answers", type=Path, help="expected answers to verify against")
    run.add_argument("--threads", type=int, default=1)
    run.add_argument("--out", type=Path, help="answer file to write (default: stdout)")
    run.add_argument("--summary", type=Path, help="write a JSON timing summary here")

    cur = sub.add_parser("curate", help="generate curated query parameters")
    cur.add_argument("--data", required=True, type=Path)
    cur.add_argument("--query-type", required=True, type=int, choices=(1, 2, 3, 4))
    cur.add_argument("--per-category", required=True, type=int)
    cur.add_argument("--out", required=True, type=Path)
    cur.add_argument("--seed", type=int, default=0)
    cur.add_argument("--strict", action="store_true", help="fail on unsatisfiable categories")
    return parser


def _cmd_run(args: argparse.Namespace) -> int:
    t0 = time.perf_counter()
    net = load_directory(args.data)
    load_s = time.perf_counter() - t0
    work = parse_query_file(args.queries)
    report = run_workload(net, work, args.threads)
    total_s = time.perf_counter() - t0

    text = "".join(line + "\n" for line in report.lines)
    if args.out:
        args.out.write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)

    err = sys.stderr
    print(f"load: {load_s:.3f}s ({net.person_count} persons)", file=err)
    for qt, (count, secs) in report.per_type().items():
        print(f"query{qt}: {count} queries, {secs:.3f}s", file=err)
    print(f"queries wall clock: {report.wall_seconds:.3f}s on {args.threads} thread(s)", file=err)
    print(f"total (load + queries): {total_s:.3f}s", file=err)

    status = 0
    verification = None
    if args.answers:
        ver = verify_answers(report.lines, args.answers)
        print(f"verification: {ver.summary()}", file=err)
        for c in ver.mismatches:
            print(f"  line {c.line}: got {c.actual!r}, expected {c.expected!r}", file=err)
        verification = {"matches": ver.matches, "mismatches": len(ver.mismatches),
                        "line_count_mismatch": ver.line_count_mismatch}
        status = 0 if ver.ok else 1

    if args.summary:
        summary = {
            "load_seconds": load_s,
            "query_wall_seconds": report.wall_seconds,
            "total_seconds": total_s,
            "threads": args.threads,
            "per_type": {f"query{t}": {"count": c, "seconds": s} for t, (c, s) in report.per_type().items()},
            "verification": verification,
        }
        args.summary.write_text(json.dumps(summary, indent=2), encoding="utf-8")
    return status


def _cmd_curate(args: argparse.Namespace) -> int:
    net = load_directory(args.data)
    queries = curate_parameters(net, args.query_type, args.per_category, seed=args.seed, strict=args.strict)
    args.out.write_text(format_workload(queries), encoding="utf-8")
    print(f"wrote {len(queries)} queries to {args.out}", file=sys.stderr)
    return 0


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.command == "run":
            return _cmd_run(args)
        return _cmd_curate(args)
    except EngineError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
