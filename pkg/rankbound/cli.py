from __future__ import annotations

import argparse
import logging
import math
import sys
import typing as t

from .base import RankBoundError
from .curves import check_bad_primes, parse_curve_literal
from .formula import KernelParams, Parity
from .harness import (
    DEFAULT_MAX_CONDUCTOR,
    RECORD_CURVE_NAMES,
    dichotomy_counts,
    read_records,
    report_table,
    run_batch,
    run_single,
    run_table1,
    sweep_statistic,
)
from .settings import Settings
from .zeros import ZeroDensity, compare_methods, load_zeros

__all__ = "main", "build_parser"

logger = logging.getLogger("rankbound")

EXIT_ERROR = 1
EXIT_VERIFY_FAILED = 3

_LOG_LEVELS = logging.WARNING, logging.INFO, logging.DEBUG


def _prime_list(text: str) -> t.List[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"Expected comma-separated integers, got {text!r}") from None


def _add_conductor(parser: argparse.ArgumentParser, required: bool = True):
    group = parser.add_mutually_exclusive_group(required=required)
    group.add_argument("--log-conductor", type=float, help="log N of the curve")
    group.add_argument("--conductor", type=int, help="conductor N of the curve")


def _add_engine(parser: argparse.ArgumentParser):
    parser.add_argument("--workers", type=int, help="worker processes (default: RANKBOUND_WORKERS or 1)")
    parser.add_argument("--cache-dir", help="a_p cache directory (default: RANKBOUND_CACHE_DIR)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rankbound",
        description="Conditional analytic rank bounds for elliptic curves from the explicit formula.",
    )
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v for progress, -vv for debug output")
    commands = parser.add_subparsers(dest="command", required=True)

    single = commands.add_parser("single", help="bound the rank of one curve")
    single.add_argument("--curve", required=True, help='a-invariants, e.g. "[0,-1,1,-10,-20]"')
    _add_conductor(single)
    single.add_argument("--delta", type=float, required=True)
    single.add_argument("--parity", choices=[p.value for p in Parity], default=Parity.Unknown.value)
    single.add_argument("--zeros", help="zeros file to cross-check the total against")
    single.add_argument("--json", dest="json_path", help="write the report as JSON")
    single.add_argument("--bad-primes", type=_prime_list, help="comma-separated factorization of the discriminant")
    _add_engine(single)

    batch = commands.add_parser("batch", help="sweep the isogeny classes of a curve table")
    batch.add_argument("--table", required=True)
    batch.add_argument("--delta", type=float, required=True)
    batch.add_argument("--out", required=True)
    batch.add_argument("--resume", action="store_true")
    batch.add_argument("--max-conductor", type=int, default=DEFAULT_MAX_CONDUCTOR)
    batch.add_argument("--timings", action="store_true", help="record wall time per class")
    _add_engine(batch)

    verify = commands.add_parser("verify", help="compare the explicit formula with a direct zero sum")
    verify.add_argument("--curve", required=True)
    _add_conductor(verify)
    verify.add_argument("--zeros", required=True)
    verify.add_argument("--delta", type=float, required=True)
    verify.add_argument("--density", choices=[d.value for d in ZeroDensity], default=ZeroDensity.Flat.value)
    _add_engine(verify)

    table1 = commands.add_parser("table1", help="bounds for the record curves")
    table1.add_argument("--curves", type=lambda s: s.split(","), default=list(RECORD_CURVE_NAMES[:-1]))
    table1.add_argument("--with-e28", action="store_true", help="include E28 at delta 3.2 (hours)")
    _add_engine(table1)

    stats = commands.add_parser("stats", help="summarize a batch record file")
    stats.add_argument("--records", required=True)

    return parser


def _settings(args: argparse.Namespace) -> Settings:
    return Settings.from_env(workers=getattr(args, "workers", None), cache_dir=getattr(args, "cache_dir", None))


def _log_conductor(args: argparse.Namespace) -> float:
    if args.log_conductor is not None:
        return args.log_conductor
    if args.conductor < 2:
        raise ValueError("Conductor should be at least 2")
    return math.log(args.conductor)


def _single(args: argparse.Namespace) -> int:
    curve = parse_curve_literal(args.curve)
    if args.bad_primes is not None:
        check_bad_primes(curve, args.bad_primes)

    zeros = load_zeros(args.zeros) if args.zeros else None
    report = run_single(
        curve,
        _log_conductor(args),
        args.delta,
        Parity(args.parity),
        _settings(args),
        zeros=zeros,
        json_path=args.json_path,
    )
    print(report)
    return 0


def _batch(args: argparse.Namespace) -> int:
    settings = _settings(args)
    written = run_batch(
        args.table,
        args.delta,
        args.out,
        resume=args.resume,
        workers=settings.workers,
        max_conductor=args.max_conductor,
        settings=settings,
        timings=args.timings,
        progress=sys.stderr.isatty(),
    )
    print(f"{written} records written to {args.out}")
    return 0


def _verify(args: argparse.Namespace) -> int:
    curve = parse_curve_literal(args.curve)
    report = compare_methods(
        curve,
        _log_conductor(args),
        load_zeros(args.zeros),
        KernelParams(args.delta),
        _settings(args),
        ZeroDensity(args.density),
    )
    print(report)
    return 0 if report.passed else EXIT_VERIFY_FAILED


def _table1(args: argparse.Namespace) -> int:
    names = list(args.curves)
    if args.with_e28 and "E28" not in names:
        names.append("E28")
    print(report_table(run_table1(names, _settings(args))))
    return 0


def _stats(args: argparse.Namespace) -> int:
    records = list(read_records(args.records))
    print(f"classes     {len(records)}")
    print(f"statistic   {sweep_statistic(records):.4f}")
    for excess, count in sorted(dichotomy_counts(records).items(), key=lambda item: (item[0] is None, item[0])):
        label = "unknown" if excess is None else f"{excess:+d}"
        print(f"bound-rank {label:>7}  {count}")
    return 0


_COMMANDS: t.Dict[str, t.Callable[[argparse.Namespace], int]] = {
    "single": _single,
    "batch": _batch,
    "verify": _verify,
    "table1": _table1,
    "stats": _stats,
}


def main(argv: t.Optional[t.Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=_LOG_LEVELS[min(args.verbose, len(_LOG_LEVELS) - 1)],
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )

    try:
        return _COMMANDS[args.command](args)
    except (RankBoundError, ValueError, OSError) as e:
        logger.debug("Command failed", exc_info=True)
        print(f"rankbound: error: {e}", file=sys.stderr)
        return EXIT_ERROR

