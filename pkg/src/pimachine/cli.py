"""Command-line interface.

Exit codes: 0 success, 1 certification failure / event-limit overflow /
failed comparison, 2 usage error. Errors go to stderr as a JSON object
with a stable ``error_kind`` field.
"""

from __future__ import annotations

import argparse
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import export
from .angles import DEFAULT_MAX_BITS, collision_count_closed_form, pi_digits
from .equivalence import compare
from .errors import PiMachineError
from .grover import GroverInstance, instance_from_ratio, optimal_iterations
from .machine import DEFAULT_MAX_EVENTS, MachineConfig, TraceMode, run_machine

_RATIONAL = re.compile(r"^\s*[+-]?\d+(\s*/\s*\d+)?\s*$")


class UsageError(Exception):
    pass


def rational(text: str) -> Fraction:
    """Parse ``"7"`` or ``"22/7"``; decimals and floats are refused."""
    if not _RATIONAL.match(text):
        raise argparse.ArgumentTypeError(f"expected an integer or num/den, got {text!r}")
    try:
        return Fraction(text.replace(" ", ""))
    except ZeroDivisionError:
        raise argparse.ArgumentTypeError(f"zero denominator in {text!r}") from None


def positive_int(text: str) -> int:
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        _report_error("usage", message)
        sys.exit(2)


def _report_error(kind: str, message: str) -> None:
    sys.stderr.write(export.dumps({"error_kind": kind, "message": message}) + "\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pimachine", description="Two-block pi machine and Grover search.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--out", metavar="PATH", help="write output here instead of stdout")
    common.add_argument("--max-events", type=positive_int, default=DEFAULT_MAX_EVENTS)
    common.add_argument("--max-bits", type=positive_int, default=DEFAULT_MAX_BITS)

    masses = argparse.ArgumentParser(add_help=False)
    masses.add_argument("--m1", type=rational, help="mass of the block next to the wall")
    masses.add_argument("--m2", type=rational, help="mass of the incoming block")

    p = sub.add_parser("simulate", parents=[common, masses], help="exact collision simulation")
    p.add_argument(
        "--v2",
        type=rational,
        default=Fraction(-1),
        help="initial velocity of block 2, negative; write fractions as --v2=-7/3",
    )
    p.add_argument("--trace", choices=("count", "full"), default="count")

    sub.add_parser("count", parents=[common, masses], help="certified closed-form count")

    p = sub.add_parser("digits", parents=[common], help="digits of pi from mass ratio 100**n")
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("grover", parents=[common, masses], help="Grover probability trace")
    p.add_argument("--n", type=int, help="number of qubits")
    p.add_argument("--k", type=int, default=0, help="marked index")
    p.add_argument("--steps", type=int, help="iterations (default: optimal)")

    p = sub.add_parser("compare", parents=[common, masses], help="machine vs Grover report")
    p.add_argument("--ratios-file", metavar="PATH", help="one m2/m1 ratio per line")
    p.add_argument("--jobs", type=positive_int, default=1)
    return parser


def _masses(args) -> tuple[Fraction, Fraction]:
    if args.m1 is None or args.m2 is None:
        raise UsageError(f"{args.command} needs both --m1 and --m2")
    return args.m1, args.m2


def _config(args, v2=Fraction(-1)) -> MachineConfig:
    m1, m2 = _masses(args)
    try:
        return MachineConfig(m1, m2, v2)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _cmd_simulate(args) -> tuple[str, int]:
    c = _config(args, args.v2)
    trace = run_machine(c, TraceMode(args.trace), args.max_events)
    if args.trace == "count":
        return export.dumps(export.count_only_json(trace, c)), 0
    if args.format == "csv":
        return export.trace_csv(trace), 0
    return export.dumps(export.trace_json(trace, c)), 0


def _cmd_count(args) -> tuple[str, int]:
    m1, m2 = _masses(args)
    if m1 <= 0 or m2 <= 0:
        raise UsageError("masses must be positive")
    result = collision_count_closed_form(m1, m2, args.max_bits)
    payload = export.certified_count_json(result)
    if args.format == "csv":
        text = export.to_csv(tuple(payload), [tuple(payload.values())])
    else:
        text = export.dumps(payload)
    if not result.certified:
        _report_error("certification_failed", f"not certified within {args.max_bits} bits")
        return text, 1
    return text, 0


def _cmd_digits(args) -> tuple[str, int]:
    if args.n < 0:
        raise UsageError("--n must be non-negative")
    return pi_digits(args.n, args.max_bits), 0


def _cmd_grover(args) -> tuple[str, int]:
    try:
        if args.n is not None:
            instance = GroverInstance(args.n, args.k)
        else:
            m1, m2 = _masses(args)
            instance = instance_from_ratio(m1, m2, args.k)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    steps = optimal_iterations(instance.theta) if args.steps is None else args.steps
    if steps < 0:
        raise UsageError("--steps must be non-negative")
    if args.format == "csv":
        return export.grover_csv(instance, steps), 0
    return export.dumps(export.grover_json(instance, steps)), 0


def _compare_ratio(job):
    ratio, max_events, max_bits = job
    return compare(MachineConfig.from_ratio(ratio), max_events=max_events, max_bits=max_bits)


def _read_ratios(path: str) -> list[Fraction]:
    ratios = []
    with open(path) as fh:
        for line in fh:
            line = line.split("#", 1)[0].strip()
            if line:
                try:
                    ratios.append(rational(line))
                except argparse.ArgumentTypeError as exc:
                    raise UsageError(str(exc)) from None
    return ratios


def _cmd_compare(args) -> tuple[str, int]:
    if args.ratios_file:
        jobs = [(r, args.max_events, args.max_bits) for r in _read_ratios(args.ratios_file)]
        if any(r <= 0 for r, _, _ in jobs):
            raise UsageError("ratios must be positive")
        if args.jobs > 1:
            with ProcessPoolExecutor(args.jobs) as pool:
                reports = list(pool.map(_compare_ratio, jobs))
        else:
            reports = [_compare_ratio(job) for job in jobs]
        if args.format == "csv":
            text = export.batch_csv(reports)
        else:
            text = export.dumps([r.as_dict() for r in reports])
        failed = [str(r.mass_ratio) for r in reports if not r.passed]
    else:
        report = compare(_config(args), max_events=args.max_events, max_bits=args.max_bits)
        text = export.comparison_csv(report) if args.format == "csv" else export.dumps(report.as_dict())
        failed = [] if report.passed else [str(report.mass_ratio)]
    if failed:
        _report_error("equivalence_failed", "comparison failed for ratios " + ", ".join(failed))
        return text, 1
    return text, 0


COMMANDS = {
    "simulate": _cmd_simulate,
    "count": _cmd_count,
    "digits": _cmd_digits,
    "grover": _cmd_grover,
    "compare": _cmd_compare,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        text, code = COMMANDS[args.command](args)
    except UsageError as exc:
        _report_error("usage", str(exc))
        return 2
    except PiMachineError as exc:
        _report_error(exc.kind, str(exc))
        return 1
    if not text.endswith("\n"):
        text += "\n"
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
