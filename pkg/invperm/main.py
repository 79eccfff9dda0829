"""
Command-line front end.

    python -m invperm.main count --patterns 132,213 --max-k 10 --method all
    python -m invperm.main enumerate --patterns 321 --k 4 --tables
    python -m invperm.main verify --max-k 8
    python -m invperm.main oeis --patterns 231 --max-k 20
    python -m invperm.main biject --which coin-removal --max-size 6 --log

Reports go to stdout, logs to stderr. Exit codes: 0 pass, 1 mismatch,
2 usage error, 3 bound exceeded, 4 fixture or network error.
"""

import os
import sys
import logging
import argparse
from typing import List, Optional

from dotenv import load_dotenv

from invperm.services.bijections import coin_removal, table_to_partition, verify_map
from invperm.services.catalog import run_count
from invperm.services.comb_objects import PartitionMode, even_fountains_of_size, partitions_of
from invperm.services.fast_counts import count_i321
from invperm.services.oeis_service import oeis_check
from invperm.services.oracle import AvoiderQuery, enumerate_avoiders
from invperm.services.perm_core import PatternSet, inversion_table
from invperm.services.reports import Method, OutputFormat, render_report
from invperm.services.verify_service import verify_all
from invperm.utils.errors import InvpermError
from invperm.utils.logging_utils import configure_logging

# Load environment variables
load_dotenv()

LOG_LEVEL = os.getenv("LOG_LEVEL", "INFO")

logger = logging.getLogger(__name__)


def _emit(text: str) -> None:
    sys.stdout.write(text)


def run_count_command(args: argparse.Namespace) -> int:
    # Compute and cross-check the requested paths
    report = run_count(PatternSet.parse(args.patterns), args.max_k, Method(args.method))
    # Report goes to stdout; mismatches exit 1
    _emit(render_report(report, OutputFormat(args.format), include_timing=not args.no_timing))
    return 0 if report.passed else 1


def run_enumerate_command(args: argparse.Namespace) -> int:
    query = AvoiderQuery(
        k=args.k,
        patterns=PatternSet.parse(args.patterns),
        indecomposable_only=not args.include_decomposable,
        max_length=args.max_length,
    )
    # One avoider per line, sorted by length then one-line form
    for p in enumerate_avoiders(query):
        if args.tables:
            _emit(f"{p} {','.join(str(b) for b in inversion_table(p).entries)}\n")
        else:
            _emit(f"{p}\n")
    return 0


def run_verify_command(args: argparse.Namespace) -> int:
    # Known-open checks do not fail the run
    report = verify_all(args.max_k)
    _emit(render_report(report, OutputFormat(args.format)))
    return 0 if report.passed else 1


def run_oeis_command(args: argparse.Namespace) -> int:
    # Read the fixture, or download it first with --online
    report = oeis_check(args.patterns, args.max_k, oeis_id=args.id, online=args.online)
    _emit(render_report(report, OutputFormat(args.format), include_timing=not args.no_timing))
    return 0 if report.passed else 1


def run_biject_command(args: argparse.Namespace) -> int:
    if args.which == "coin-removal":
        for s in range(args.max_size + 1):
            fountains = even_fountains_of_size(s)
            # Run every walk once; the map is checked on the recorded outputs
            traces = {f: coin_removal(f, emit_skipped=args.emit_skipped) for f in fountains}
            report = verify_map(fountains, lambda f: traces[f].output)
            _emit(f"s={s} {report.summary()}, a_(s,1) {count_i321(s)}\n")
            # Collisions are reported, not fatal
            for output, preimages in report.collisions:
                rows = " | ".join(str(f.fountain.rows) for f in preimages)
                _emit(f"  collision {output}: {rows}\n")
            if args.log:
                for f in fountains:
                    # Drawing first, then the walk log
                    drawing = "".join(f"# {line}\n" for line in f.fountain.render().splitlines())
                    _emit(f"# fountain {f.fountain.rows}\n{drawing}{traces[f].to_log()}")
        return 0

    # Inversion tables onto the three partition families
    status = 0
    families = (("132", PartitionMode.ALL), ("132,231", PartitionMode.DISTINCT), ("132,321", PartitionMode.EQUAL_PARTS))
    for text, mode in families:
        patterns = PatternSet.parse(text)
        for k in range(args.max_size + 1):
            report = verify_map(enumerate_avoiders(AvoiderQuery(k, patterns)), table_to_partition, partitions_of(k, mode))
            verdict = "bijective" if report.bijective else "NOT bijective"
            _emit(f"{patterns} k={k} {verdict}: {report.summary()}\n")
            if args.log:
                for p, rho in report.pairs:
                    _emit(f"  {p} -> {rho}\n")
            if not report.bijective:
                status = 1
    return status


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="invperm",
        description="Enumerate indecomposable permutations by inversions and pattern avoidance",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    formats = [f.value for f in OutputFormat]

    count = sub.add_parser("count", help="Count |I_k(patterns)| for k = 0..max-k")
    count.add_argument("--patterns", required=True, help="Comma-separated patterns, e.g. 132,213")
    count.add_argument("--max-k", type=int, default=10, help="Largest k (default: 10)")
    count.add_argument("--method", choices=[m.value for m in Method], default=Method.ALL.value, help="Computation path (default: all)")
    count.add_argument("--format", choices=formats, default=OutputFormat.JSON.value, help="Report format (default: json)")
    count.add_argument("--no-timing", action="store_true", help="Omit elapsed_ms for byte-stable output")
    count.set_defaults(handler=run_count_command)

    enum = sub.add_parser("enumerate", help="List the avoiders with exactly k inversions")
    enum.add_argument("--patterns", required=True, help="Comma-separated patterns")
    enum.add_argument("--k", type=int, required=True, help="Number of inversions")
    enum.add_argument("--tables", action="store_true", help="Print each inversion table too")
    enum.add_argument("--include-decomposable", action="store_true", help="Also list decomposable permutations (needs --max-length)")
    enum.add_argument("--max-length", type=int, default=None, help="Longest permutation to consider")
    enum.set_defaults(handler=run_enumerate_command)

    verify = sub.add_parser("verify", help="Run the invariant suite")
    verify.add_argument("--max-k", type=int, default=8, help="Largest k (default: 8)")
    verify.add_argument("--format", choices=formats, default=OutputFormat.PLAIN.value, help="Report format (default: plain)")
    verify.set_defaults(handler=run_verify_command)

    oeis = sub.add_parser("oeis", help="Compare computed terms with an OEIS b-file")
    target = oeis.add_mutually_exclusive_group(required=True)
    target.add_argument("--patterns", help="Comma-separated patterns")
    target.add_argument("--id", help="OEIS id, e.g. A000041")
    source = oeis.add_mutually_exclusive_group()
    source.add_argument("--online", action="store_true", help="Fetch the b-file from oeis.org and refresh the fixture")
    source.add_argument("--offline", action="store_true", help="Use the shipped fixture (default)")
    oeis.add_argument("--max-k", type=int, default=20, help="Largest k (default: 20)")
    oeis.add_argument("--format", choices=formats, default=OutputFormat.JSON.value, help="Report format (default: json)")
    oeis.add_argument("--no-timing", action="store_true", help="Omit elapsed_ms for byte-stable output")
    oeis.set_defaults(handler=run_oeis_command)

    biject = sub.add_parser("biject", help="Check a bijection for injectivity and image size")
    biject.add_argument("--which", choices=["coin-removal", "table-partition"], required=True)
    biject.add_argument("--max-size", type=int, default=8, help="Largest size or k (default: 8)")
    biject.add_argument("--emit-skipped", action="store_true", help="Coin removal: write 0 for already removed bottom coins")
    biject.add_argument("--log", action="store_true", help="Print walk logs or element pairs")
    biject.set_defaults(handler=run_biject_command)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    # Parse arguments first; argparse exits 2 on usage errors
    args = build_parser().parse_args(argv)
    configure_logging(LOG_LEVEL)

    # Map service errors to exit codes
    try:
        return args.handler(args)
    except InvpermError as e:
        logger.debug(f"{type(e).__name__} in {args.command}", exc_info=True)
        print(f"Error: {str(e)}", file=sys.stderr)
        return e.exit_code
    except ValueError as e:
        # Malformed input that is not one of ours
        print(f"Error: {str(e)}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
