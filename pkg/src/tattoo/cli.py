"""Command line driver.

Exit status: 0 on success, 2 for unusable input, 3 for a blown
resource limit.  The report goes to stdout as bytes; diagnostics go to
stderr.
"""
from __future__ import annotations

import argparse
import sys

from .errors import InputError, ResourceLimitError
from .fta import CONTEXTUAL_KINDS
from .limits import MAX_STATES_ENV
from .pipeline import ENGINES, AnalysisRequest, run_analysis
from .report import FORMATS, emit


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="tattoo",
        description="Type-based analysis of pure logic programs.")
    p.add_argument("--program", required=True, metavar="FILE",
                   help="logic program to analyse ('-' reads stdin)")
    p.add_argument("--types", metavar="FILE",
                   help="type definitions interpreted alongside the program")
    p.add_argument("--contextual", action="append", default=[], metavar="KIND",
                   help="add contextual types (%s); repeatable or "
                        "comma-separated" % ", ".join(CONTEXTUAL_KINDS))
    p.add_argument("--engine", default="dm", choices=ENGINES,
                   help="dm computes least models, wt infers a well-typing, "
                        "rta infers a regular approximation")
    p.add_argument("--goal", metavar="GOAL",
                   help="typed goal such as 'rev(list,dynamic)'; switches dm "
                        "to goal-directed analysis")
    p.add_argument("--format", default="json", choices=FORMATS,
                   help="report format")
    p.add_argument("--max-states", type=int, metavar="N",
                   help=f"cap on determinised states (also {MAX_STATES_ENV})")
    p.add_argument("--chain", action="store_true",
                   help="feed the inferred types of wt/rta into a second "
                        "model computation")
    return p


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        program = _read(args.program)
        types = _read(args.types) if args.types else ""
    except OSError as exc:
        print(f"tattoo: {exc}", file=sys.stderr)
        return 2
    kinds = tuple(k.strip() for chunk in args.contextual
                  for k in chunk.split(",") if k.strip())
    req = AnalysisRequest(program=program, types=types, contextual=kinds,
                          engine=args.engine, goal=args.goal,
                          max_states=args.max_states, chain=args.chain)
    try:
        report = run_analysis(req)
    except ResourceLimitError as exc:
        print(f"tattoo: {exc}", file=sys.stderr)
        return 3
    except InputError as exc:
        print(f"tattoo: {exc}", file=sys.stderr)
        return 2
    sys.stdout.buffer.write(emit(report, args.format))
    sys.stdout.buffer.flush()
    return 0


if __name__ == "__main__":
    sys.exit(main())
