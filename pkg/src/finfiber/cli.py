"""Command-line front end.

Every subcommand is a thin wrapper over one library call; the CLI adds
no arithmetic of its own.  Scalar commands emit a JSON record
``{"command", "inputs", "outputs"}`` by default, streams default to
CSV; ``--format`` switches.  All reals are formatted with 17
significant digits so identical inputs produce byte-identical output.

Exit codes: 0 success, 1 domain or numeric failure, 2 usage error.
The environment variable ``FINFIBER_TOL`` overrides the default
tolerance (1e-9) where a command consumes one.
"""

from __future__ import annotations

import argparse
import csv
import os
import sys
from typing import Optional

import numpy as np

from .connection import (
    christoffel_from_discount,
    financial_translate,
    force_of_interest,
    induced_discount,
)
from .core import DEFAULT_TOL, FinancialEvent, FinFiberError, LAW_IDS, Rate, make_law
from .fibration import fiber_eval_many, Fiber, project_compound, project_general
from .morphism import rate_isomorphism
from .section import CapitalEvolution, trace_test

__all__ = ["main"]


class _UsageError(Exception):
    """Bad flags or ill-formed request; maps to exit code 2."""


class _DataError(Exception):
    """Unreadable or ill-formed input data; maps to exit code 1."""


def _fmt(value: float) -> str:
    return format(float(value), ".17g")


def _json_value(value) -> str:
    if value is None:
        return "null"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, str):
        escaped = value.replace("\\", "\\\\").replace('"', '\\"')
        return f'"{escaped}"'
    if isinstance(value, (list, tuple, np.ndarray)):
        return "[" + ",".join(_json_value(v) for v in value) + "]"
    return _fmt(value)


def _json_object(pairs: dict) -> str:
    return "{" + ",".join(f'"{k}":{_json_value(v)}' for k, v in pairs.items()) + "}"


def _emit_record(out, command: str, inputs: dict, outputs: dict) -> None:
    body = (
        '{"command":' + _json_value(command)
        + ',"inputs":' + _json_object(inputs)
        + ',"outputs":' + _json_object(outputs)
        + "}"
    )
    out.write(body + "\n")


def _emit_csv_scalar(out, outputs: dict) -> None:
    out.write(",".join(outputs) + "\n")
    out.write(",".join(_fmt(v) for v in outputs.values()) + "\n")


def _tolerance() -> float:
    raw = os.environ.get("FINFIBER_TOL")
    if raw is None:
        return DEFAULT_TOL
    try:
        tol = float(raw)
    except ValueError:
        raise _UsageError(f"FINFIBER_TOL must be a number, got {raw!r}") from None
    if not (tol > 0.0):
        raise _UsageError(f"FINFIBER_TOL must be positive, got {raw!r}")
    return tol


def _law_from_args(args):
    if args.param is None:
        raise _UsageError(f"--law {args.law} requires --param")
    return make_law(args.law, args.param)


def _scalar_output(out, args, command: str, inputs: dict, outputs: dict) -> None:
    if args.format == "csv":
        _emit_csv_scalar(out, outputs)
    else:
        _emit_record(out, command, inputs, outputs)


# --------------------------------------------------------------------------
# Subcommand handlers.  Each returns None and writes to `out`.


def _cmd_project(args, out) -> None:
    if (args.rate is None) == (args.law is None):
        raise _UsageError("project needs exactly one of --rate or --law")
    event = FinancialEvent(args.t, args.c)
    if args.rate is not None:
        base = project_compound(event, Rate(args.rate))
        inputs = {"t": args.t, "c": args.c, "rate": args.rate}
    else:
        base = project_general(event, _law_from_args(args))
        inputs = {"t": args.t, "c": args.c, "law": args.law, "param": args.param}
    _scalar_output(out, args, "project", inputs, {"base": base})


def _cmd_fiber(args, out) -> None:
    if args.steps < 1:
        raise _UsageError("--steps must be at least 1")
    fb = Fiber(rate=Rate(args.rate), base_capital=args.base)
    times = np.linspace(args.t_min, args.t_max, args.steps + 1)
    capitals = fiber_eval_many(fb, times)
    if args.format == "json":
        rows = [[t, m] for t, m in zip(times, capitals)]
        inputs = {
            "rate": args.rate,
            "base": args.base,
            "t_min": args.t_min,
            "t_max": args.t_max,
            "steps": args.steps,
        }
        _emit_record(out, "fiber", inputs, {"rows": rows})
        return
    out.write("t,M\n")
    for t, m in zip(times, capitals):
        out.write(f"{_fmt(t)},{_fmt(m)}\n")
        out.flush()


def _read_trace_csv(path: str) -> tuple[np.ndarray, np.ndarray]:
    try:
        handle = open(path, "r", newline="")
    except OSError as exc:
        raise _DataError(f"cannot read {path}: {exc}") from None
    times: list[float] = []
    values: list[float] = []
    with handle:
        reader = csv.reader(handle)
        header = next(reader, None)
        if header is None:
            raise _UsageError(f"{path}: empty input, expected header t,M")
        if [col.strip() for col in header] != ["t", "M"]:
            raise _DataError(f"{path}: line 1: expected header t,M, got {header}")
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 2:
                raise _DataError(f"{path}: line {lineno}: expected 2 columns, got {len(row)}")
            try:
                t = float(row[0])
                m = float(row[1])
            except ValueError:
                raise _DataError(f"{path}: line {lineno}: non-numeric sample {row}") from None
            if times and t <= times[-1]:
                raise _DataError(f"{path}: line {lineno}: t must be strictly increasing")
            times.append(t)
            values.append(m)
    if not times:
        raise _UsageError(f"{path}: no samples after header")
    return np.asarray(times), np.asarray(values)


def _cmd_section_check(args, out) -> None:
    lo_hi = args.targets.split(",")
    if len(lo_hi) != 2:
        raise _UsageError("--targets must be lo,hi")
    try:
        lo, hi = float(lo_hi[0]), float(lo_hi[1])
    except ValueError:
        raise _UsageError(f"--targets must be numeric, got {args.targets!r}") from None
    if lo > hi:
        raise _UsageError("--targets lower bound exceeds upper bound")
    tol = _tolerance()
    times, values = _read_trace_csv(args.input)
    try:
        evolution = CapitalEvolution.from_samples(times, values)
    except ValueError as exc:
        raise _DataError(f"{args.input}: {exc}") from None
    report = trace_test(evolution, Rate(args.rate), (lo, hi), tol=tol)
    witness = None
    if report.witness is not None:
        witness = [[t, v] for t, v in report.witness]
    inputs = {
        "input": args.input,
        "rate": args.rate,
        "targets_lo": lo,
        "targets_hi": hi,
        "tol": tol,
    }
    outputs = {
        "is_trace": report.is_trace,
        "failure_reason": report.failure_reason,
        "witness": witness,
    }
    _emit_record(out, "section-check", inputs, outputs)


def _cmd_isomap(args, out) -> None:
    mapped = rate_isomorphism(
        FinancialEvent(args.t, args.c), Rate(args.from_rate), Rate(args.to_rate)
    )
    inputs = {"t": args.t, "c": args.c, "from": args.from_rate, "to": args.to_rate}
    _scalar_output(out, args, "isomap", inputs, {"t": mapped.time, "c": mapped.capital})


def _cmd_transport(args, out) -> None:
    law = _law_from_args(args)
    F = induced_discount(law, args.t)
    moved = financial_translate(FinancialEvent(args.t, args.c), args.h, F)
    inputs = {
        "t": args.t,
        "c": args.c,
        "h": args.h,
        "law": args.law,
        "param": args.param,
    }
    _scalar_output(out, args, "transport", inputs, {"t": moved.time, "c": moved.capital})


def _cmd_christoffel(args, out) -> None:
    law = _law_from_args(args)
    form = christoffel_from_discount(induced_discount(law, args.t), args.t)
    inputs = {"law": args.law, "param": args.param, "t": args.t}
    _scalar_output(
        out, args, "christoffel", inputs, {"time": form.time, "gamma": form.gamma}
    )


def _cmd_force(args, out) -> None:
    law = _law_from_args(args)
    delta = force_of_interest(law, args.t)
    inputs = {"law": args.law, "param": args.param, "t": args.t}
    _scalar_output(out, args, "force", inputs, {"force": delta})


# --------------------------------------------------------------------------


def _add_law_flags(sub, required: bool) -> None:
    sub.add_argument("--law", choices=LAW_IDS, required=required, help="registry law id")
    sub.add_argument("--param", type=float, help="law parameter (rate or force)")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="finfiber",
        description="Projections, rate changes, section checks, and transport "
        "on the plane of financial events.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("project", help="present value of an event")
    p.add_argument("--t", type=float, required=True, help="event time")
    p.add_argument("--c", type=float, required=True, help="event capital")
    p.add_argument("--rate", type=float, help="compound rate i > -1")
    _add_law_flags(p, required=False)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(handler=_cmd_project)

    p = subs.add_parser("fiber", help="sample a growth curve as CSV rows t,M")
    p.add_argument("--rate", type=float, required=True)
    p.add_argument("--base", type=float, required=True, help="capital at time 0")
    p.add_argument("--t-min", dest="t_min", type=float, required=True)
    p.add_argument("--t-max", dest="t_max", type=float, required=True)
    p.add_argument("--steps", type=int, required=True, help="number of intervals")
    p.add_argument("--format", choices=("json", "csv"), default="csv")
    p.set_defaults(handler=_cmd_fiber)

    p = subs.add_parser(
        "section-check", help="test whether sampled t,M rows trace a section"
    )
    p.add_argument("--input", required=True, help="CSV file with header t,M")
    p.add_argument("--rate", type=float, required=True)
    p.add_argument("--targets", required=True, help="capital interval lo,hi")
    p.set_defaults(handler=_cmd_section_check, format="json")

    p = subs.add_parser("isomap", help="map an event between rate fibrations")
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--c", type=float, required=True)
    p.add_argument("--from", dest="from_rate", type=float, required=True)
    p.add_argument("--to", dest="to_rate", type=float, required=True)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(handler=_cmd_isomap)

    p = subs.add_parser("transport", help="translate an event along its law")
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--c", type=float, required=True)
    p.add_argument("--h", type=float, required=True, help="time displacement")
    _add_law_flags(p, required=True)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(handler=_cmd_transport)

    p = subs.add_parser("christoffel", help="lift coefficient of a law at a time")
    _add_law_flags(p, required=True)
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(handler=_cmd_christoffel)

    p = subs.add_parser("force", help="force of interest of a law at a time")
    _add_law_flags(p, required=True)
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(handler=_cmd_force)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        args.handler(args, sys.stdout)
    except _UsageError as exc:
        parser.exit(2, f"{parser.prog}: error: {exc}\n")
    except (_DataError, FinFiberError, ValueError, OverflowError) as exc:
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
