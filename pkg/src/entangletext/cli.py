"""Command-line interface: analyze, simulate, selftest.

Exit codes: 0 ok, 1 usage error, 2 corpus error, 3 selftest failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .corpus import CorpusError
from .report import RunConfig, run_analyze, run_simulate
from .selftest import run_selftest

__all__ = ["main", "build_parser"]


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors by default; the contract is 1
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _parse_grid(text: str) -> list[float]:
    """start:stop:step, inclusive of stop (within float tolerance)."""
    try:
        start, stop, step = (float(x) for x in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected start:stop:step, got {text!r}"
        ) from None
    if step <= 0 or stop < start:
        raise argparse.ArgumentTypeError(f"bad grid {text!r}")
    values = []
    k = 0
    while True:
        value = round(start + k * step, 10)
        if value > stop + 1e-9:
            break
        values.append(value)
        k += 1
    return values


def _parse_int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="entangletext", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    analyze = sub.add_parser("analyze", help="run the corpus analysis end to end")
    analyze.add_argument("manifest", type=Path, help="corpus manifest JSON")
    analyze.add_argument("--out", type=Path, required=True, help="output directory")
    analyze.add_argument(
        "--window",
        type=int,
        action="append",
        metavar="W",
        help="window size; repeatable (default: 20 10 5)",
    )
    analyze.add_argument(
        "--relevance",
        choices=("frequency", "tfidf"),
        action="append",
        help="relevance method; repeatable (default: both)",
    )
    analyze.add_argument("--stoplist", type=Path, help="custom stoplist file")
    analyze.add_argument(
        "--no-stem", action="store_true", help="disable Porter stemming"
    )
    analyze.add_argument("--seed", type=int, default=0)
    analyze.add_argument(
        "--top-violations",
        type=int,
        default=10,
        help="violating subset pairs kept per result JSON",
    )
    analyze.add_argument("--k", type=int, default=10, help="terms per concept")

    simulate = sub.add_parser("simulate", help="Monte-Carlo violation-probability curves")
    simulate.add_argument(
        "--kind", choices=("zipf", "homogeneous", "poisson"), default="zipf"
    )
    simulate.add_argument(
        "--lambda-grid",
        type=_parse_grid,
        default=None,
        metavar="A:B:STEP",
        dest="lambda_grid",
        help="zipf exponent grid (default 0.1:2.0:0.1)",
    )
    simulate.add_argument(
        "--mu-grid",
        type=_parse_grid,
        default=None,
        metavar="A:B:STEP",
        help="poisson mean grid (default: B/10 per bound)",
    )
    simulate.add_argument(
        "--B",
        type=_parse_int_list,
        default=[10, 50, 100, 500],
        dest="bounds",
        metavar="B1,B2,...",
        help="support bounds (default 10,50,100,500)",
    )
    simulate.add_argument("--samples", type=int, default=10_000)
    simulate.add_argument("--seed", type=int, default=42)
    simulate.add_argument("--out", type=Path, required=True, help="curve CSV path")

    sub.add_parser("selftest", help="run the embedded verification suite")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.command == "analyze":
        config = RunConfig(
            manifest=args.manifest,
            out_dir=args.out,
            window_sizes=tuple(args.window) if args.window else (20, 10, 5),
            methods=tuple(args.relevance) if args.relevance else ("frequency", "tfidf"),
            concept_size=args.k,
            seed=args.seed,
            stoplist_path=args.stoplist,
            stemming=not args.no_stem,
            top_violations=args.top_violations,
        )
        try:
            reports = run_analyze(config)
        except CorpusError as exc:
            print(f"corpus error: {exc}", file=sys.stderr)
            return 2
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 1
        print(f"analyzed {len(reports)} topics -> {config.out_dir}")
        return 0

    if args.command == "simulate":
        if args.kind == "zipf":
            parameters = args.lambda_grid or _parse_grid("0.1:2.0:0.1")
        elif args.kind == "poisson":
            parameters = args.mu_grid
        else:
            parameters = None
        try:
            curves = run_simulate(
                args.kind, parameters, args.bounds, args.samples, args.seed, args.out
            )
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 1
        print(f"wrote {len(curves.estimates)} grid points -> {args.out}")
        return 0

    results = run_selftest()
    return 0 if all(r.passed for r in results) else 3


if __name__ == "__main__":
    sys.exit(main())
