"""Command line interface: ``magicsq gen|verify|csp|bench``.

Exit codes:
    0  success (square is magic / solved / written)
    1  verify: the square is not magic
    2  invalid arguments, unreadable input, model too large
    3  a generated square failed self-verification (internal bug)
    4  CSP search hit the time limit (result unknown)
    5  CSP proven infeasible

Data goes to stdout (or ``--out``); diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import __version__
from .bench import (
    METHODS,
    fit_by_class,
    run_bench,
    samples_to_csv,
)
from .construct import construct
from .core import MagicSquareError
from .csp import (
    DEFAULT_MAX_VARIABLES,
    SolveStatus,
    SolveTimeoutError,
    build_model,
    decode_solution,
    export_lp,
    parse_solution_text,
    solve_builtin,
)
from .io import FORMATS, DocumentError, dumps, loads
from .verify import verify

EXIT_OK = 0
EXIT_NOT_MAGIC = 1
EXIT_USAGE = 2
EXIT_SELF_CHECK = 3
EXIT_TIMEOUT = 4
EXIT_INFEASIBLE = 5

def _write(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        with open(out, "w", encoding="ascii", newline="\n") as fh:
            fh.write(text)


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def _fail(message: str, code: int = EXIT_USAGE) -> int:
    print(f"magicsq: error: {message}", file=sys.stderr)
    return code


def cmd_gen(args: argparse.Namespace) -> int:
    try:
        square = construct(args.n, args.a_min)
    except (MagicSquareError, TypeError) as exc:
        return _fail(str(exc))
    report = verify(square)
    if not report.is_magic:
        print(report.summary(), file=sys.stderr)
        return _fail(f"self-verification failed for n={args.n}", EXIT_SELF_CHECK)
    _write(dumps(square, args.format), args.out)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    try:
        text = _read(args.path)
    except OSError as exc:
        return _fail(str(exc))
    try:
        square = loads(text, args.format, args.a_min)
    except (DocumentError, MagicSquareError) as exc:
        return _fail(f"cannot parse {args.path}: {exc}")
    if args.max_failures < 1:
        return _fail("--max-failures must be positive")
    report = verify(square, max_failures=args.max_failures)
    if args.json:
        print(json.dumps(report.to_dict()))
    else:
        print(report.summary())
    return EXIT_OK if report.is_magic else EXIT_NOT_MAGIC


def cmd_csp(args: argparse.Namespace) -> int:
    try:
        model = build_model(args.n, args.a_min, max_variables=args.max_variables)
    except (MagicSquareError, TypeError) as exc:
        return _fail(str(exc))

    if args.mode == "export":
        if args.out is None or args.out == "-":
            export_lp(model, sys.stdout.buffer)
            sys.stdout.flush()
        else:
            export_lp(model, args.out)
        return EXIT_OK

    if args.mode == "decode":
        if not args.solution:
            return _fail("--solution is required with --mode decode")
        try:
            raw = parse_solution_text(_read(args.solution))
            square = decode_solution(model, raw)
        except (OSError, MagicSquareError) as exc:
            return _fail(str(exc))
        report = verify(square)
        _write(dumps(square, args.format), args.out)
        if not report.is_magic:
            print(report.summary(), file=sys.stderr)
            return EXIT_NOT_MAGIC
        return EXIT_OK

    result = solve_builtin(model, time_limit=args.time_limit)
    stats = result.stats
    print(
        f"status={result.status.value} nodes={stats.nodes} backtracks={stats.backtracks} "
        f"seconds={stats.seconds:.3f}",
        file=sys.stderr,
    )
    if result.status is SolveStatus.UNKNOWN:
        return _fail(f"no solution within {args.time_limit} s (unknown)", EXIT_TIMEOUT)
    if result.status is SolveStatus.INFEASIBLE:
        return _fail("model proven infeasible", EXIT_INFEASIBLE)
    square = result.solution.square
    if not verify(square).is_magic:
        return _fail("solver output failed verification", EXIT_SELF_CHECK)
    _write(dumps(square, args.format), args.out)
    return EXIT_OK


def cmd_bench(args: argparse.Namespace) -> int:
    if args.min_n < 3 or args.max_n < args.min_n or args.step < 1 or args.repetitions < 1:
        return _fail("need 3 <= min-n <= max-n, step >= 1 and repetitions >= 1")
    orders = range(args.min_n, args.max_n + 1, args.step)
    try:
        samples = run_bench(
            orders,
            args.method,
            args.repetitions,
            csp_time_limit=args.time_limit,
            skip_timeouts=True,
        )
    except MagicSquareError as exc:
        return _fail(str(exc))
    skipped = len(samples) < len(orders)

    _write(samples_to_csv(samples), args.out_csv)
    fits = []
    for cls, fit in fit_by_class(samples).items():
        if fit is None:
            print(f"magicsq: {cls.value}: fewer than 3 distinct orders, no fit", file=sys.stderr)
        else:
            fits.append(fit.to_dict())
    _write(json.dumps(fits) + "\n", args.fit_json)
    if skipped:
        done = {s.n for s in samples}
        missing = " ".join(str(n) for n in orders if n not in done)
        return _fail(f"timed out and skipped: n = {missing}", EXIT_TIMEOUT)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="magicsq",
        description="Construct, verify and model magic squares.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="construct a magic square of order n")
    gen.add_argument("--n", type=int, required=True, help="order (>= 3)")
    gen.add_argument("--a-min", type=int, default=1, help="smallest entry (default 1)")
    gen.add_argument("--format", choices=FORMATS, default="csv")
    gen.add_argument("--out", help="output file (default stdout)")
    gen.set_defaults(func=cmd_gen)

    ver = sub.add_parser("verify", help="check a CSV or JSON square")
    ver.add_argument("path", help="matrix document, or - for stdin")
    ver.add_argument("--a-min", type=int, default=None,
                     help="declared smallest entry (default: JSON a_min, else 1)")
    ver.add_argument("--format", choices=FORMATS, default=None, help="default: sniffed")
    ver.add_argument("--max-failures", type=int, default=100)
    ver.add_argument("--json", action="store_true", help="print the report as JSON")
    ver.set_defaults(func=cmd_verify)

    csp = sub.add_parser("csp", help="solve, export or decode the binary CSP model")
    csp.add_argument("--n", type=int, required=True)
    csp.add_argument("--a-min", type=int, default=1)
    csp.add_argument("--mode", choices=("solve", "export", "decode"), default="solve")
    csp.add_argument("--time-limit", type=float, default=60.0, help="seconds (solve)")
    csp.add_argument("--max-variables", type=int, default=DEFAULT_MAX_VARIABLES)
    csp.add_argument("--solution", help="'name value' solution file (decode)")
    csp.add_argument("--format", choices=FORMATS, default="csv", help="square output format")
    csp.add_argument("--out", help="output file (default stdout)")
    csp.set_defaults(func=cmd_csp)

    bench = sub.add_parser("bench", help="time constructions and fit quadratics per class")
    bench.add_argument("--min-n", type=int, default=3)
    bench.add_argument("--max-n", type=int, default=500)
    bench.add_argument("--step", type=int, default=1)
    bench.add_argument("--method", choices=METHODS, default="fast")
    bench.add_argument("--repetitions", type=int, default=3)
    bench.add_argument("--time-limit", type=float, default=60.0, help="per CSP solve, seconds")
    bench.add_argument("--out-csv", default="bench.csv", help="samples CSV (- for stdout)")
    bench.add_argument("--fit-json", default=None, help="fit summary (default stdout)")
    bench.set_defaults(func=cmd_bench)
    return parser


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="magicsq: %(message)s", stream=sys.stderr)
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SolveTimeoutError as exc:
        return _fail(str(exc), EXIT_TIMEOUT)
    except MagicSquareError as exc:
        return _fail(str(exc))


if __name__ == "__main__":
    sys.exit(main())
