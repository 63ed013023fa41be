"""Command line front end: ``berrut-lab {interpolate,convergence,limits,verify}``.

Tabular output is CSV by default: a ``#schema=1`` comment line, a header
row, then data rows with floats printed to 17 significant digits.  Exit
codes are 0 on success, 1 when a verification fails and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from .barycentric import SampledFunction, WeightScheme, evaluate
from .error_analysis import bv_bound_rhs, uniform_study
from .grid import Parity, RationalPoint
from .limits import LimitKind, bias, denominator_limit_set, error_limit_set
from .models import LIBRARY, get_model
from . import verification

SCHEMA_LINE = "#schema=1"
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def parse_range(spec: str) -> list[int]:
    """``a:b`` (step 1), ``a:b:s`` (step s) or ``a:b:*k`` (geometric), all inclusive.

    A geometric ladder keeps the parity of ``a``: with r = a mod 2 it visits
    (a - r) k^i + r, so 51:3201:*2 gives 51, 101, 201, ..., 3201.
    A bare integer or a comma separated list is accepted too.
    """
    spec = spec.strip()
    try:
        if ":" not in spec:
            values = [int(v) for v in spec.split(",") if v.strip()]
        else:
            parts = spec.split(":")
            if len(parts) not in (2, 3):
                raise ValueError
            a, b = int(parts[0]), int(parts[1])
            step = parts[2] if len(parts) == 3 else "1"
            if step.startswith("*"):
                k = int(step[1:])
                if k < 2 or a < 1:
                    raise ValueError
                r = a % 2
                values, i = [], 0
                while (a - r) * k ** i + r <= b:
                    values.append((a - r) * k ** i + r)
                    if a - r == 0:
                        break
                    i += 1
            else:
                s = int(step)
                if s < 1:
                    raise ValueError
                values = list(range(a, b + 1, s))
    except ValueError:
        raise UsageError(f"malformed range {spec!r}; use a:b, a:b:s or a:b:*k") from None
    if not values:
        raise UsageError(f"range {spec!r} is empty")
    if any(v < 1 for v in values):
        raise UsageError("n must be a positive integer")
    return values


def parse_parity(text: str) -> Optional[Parity]:
    if text.lower() == "both":
        return None
    try:
        return Parity.parse(text)
    except (KeyError, ValueError):
        raise UsageError(f"parity must be odd, even or both, got {text!r}") from None


def parse_rational(text: str) -> RationalPoint:
    try:
        return RationalPoint.parse(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"malformed rational {text!r}: {exc}") from None


def _model(name: str):
    try:
        return get_model(name)
    except KeyError:
        raise UsageError(f"unknown function {name!r}; choose from {', '.join(LIBRARY)}") from None


def fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        return "%.17g" % value
    return str(value)


@dataclass
class Table:
    header: list
    rows: list = field(default_factory=list)

    def add(self, *values):
        self.rows.append([fmt(v) for v in values])

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write(SCHEMA_LINE + "\n")
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.header)
        writer.writerows(self.rows)
        return buf.getvalue()

    def to_text(self) -> str:
        cells = [self.header] + self.rows
        widths = [max(len(r[i]) for r in cells) for i in range(len(self.header))]
        return "".join("  ".join(c.rjust(w) for c, w in zip(r, widths)) + "\n" for r in cells)


def emit(table: Table, args) -> None:
    text = table.to_text() if args.format == "text" else table.to_csv()
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_interpolate(args) -> int:
    model = _model(args.fn)
    if args.n < 1:
        raise UsageError("n must be a positive integer")
    try:
        weights = WeightScheme.parse(args.scheme)
    except (KeyError, ValueError):
        raise UsageError(f"unknown scheme {args.scheme!r}; use berrut or halved") from None
    xs = [float(v) for chunk in args.x for v in chunk.split(",") if v.strip()]
    if not xs:
        raise UsageError("give at least one point with --x")
    if any(not -1.0 <= x <= 1.0 for x in xs):
        raise UsageError("points must lie in [-1, 1]")
    samples = SampledFunction.from_function(model.f, args.n)
    values = np.atleast_1d(evaluate(samples, weights, np.array(xs)))
    exact = model.values(np.array(xs))
    table = Table(["n", "x", "value", "error"])
    for x, v, e in zip(xs, values, exact):
        table.add(args.n, float(x), float(v), float(v - e))
    emit(table, args)
    return EXIT_OK


def cmd_convergence(args) -> int:
    model = _model(args.fn)
    parity = parse_parity(args.parity)
    if args.probes < 2:
        raise UsageError("probes must be at least 2")
    ns = parse_range(args.n)
    if parity is not None:
        ns = [n for n in ns if parity.matches(n)]
    ns = sorted(set(ns))
    if not ns:
        raise UsageError("no n of the requested parity in the range")
    try:
        rhs, warning = bv_bound_rhs(model, args.probes), ""
    except ValueError:
        rhs, warning = math.nan, "no tv_fprime: BV bound not checked"
    table = Table(["n", "sup_err", "scaled_err", "bias_corrected", "bv_bound_rhs",
                   "bound_satisfied", "warning"])
    for rec in uniform_study(model, ns, parity, args.probes):
        ok = "" if warning else rec.scaled_err <= rhs + 1e-6
        table.add(rec.n, rec.sup_err, rec.scaled_err, rec.bias_corrected, rhs, ok, warning)
    emit(table, args)
    return EXIT_OK


def cmd_limits(args) -> int:
    parities = [Parity.ODD, Parity.EVEN] if parse_parity(args.parity) is None else [parse_parity(args.parity)]
    model = _model(args.fn) if args.fn else None
    table = Table(["set", "parity", "kind", "value"])
    if args.rational is not None:
        point = parse_rational(args.rational)
        x = float(point.x)
        for parity in parities:
            for v in denominator_limit_set(point, parity).values:
                table.add("denominator", parity.name.lower(), "point", v)
        if model is not None:
            for parity in parities:
                for v in error_limit_set(model, x, point, parity).values:
                    table.add("error", parity.name.lower(), "point", v)
    else:
        if model is None:
            raise UsageError("--irrational needs --fn to scale the interval")
        x = args.irrational
        if not -1.0 < x < 1.0:
            raise UsageError("x must lie in (-1, 1)")
        for parity in parities:
            lim = error_limit_set(model, x, None, parity)
            table.add("error", parity.name.lower(), "lo", lim.lo)
            table.add("error", parity.name.lower(), "hi", lim.hi)
    if model is not None:
        b = bias(model, x)
        table.add("bias", "odd", "point", b.odd_bias)
        table.add("bias", "even", "point", b.even_bias)
    emit(table, args)
    return EXIT_OK


def _m_list(text: str) -> tuple:
    try:
        values = tuple(int(v) for v in text.split(",") if v.strip())
        for m in values:
            verification.SawtoothParams(m)
    except ValueError as exc:
        raise UsageError(f"bad --m: {exc}") from None
    return values


def cmd_verify(args) -> int:
    keys = [k for chunk in args.only for k in chunk.split(",") if k.strip()] if args.only else None
    try:
        names = verification.resolve(keys) if keys else list(verification.SECTIONS)
    except KeyError as exc:
        known = ", ".join(list(verification.SECTIONS) + list(verification.ALIASES))
        raise UsageError(f"unknown section {exc}; known: {known}") from None
    if args.samples < 1:
        raise UsageError("samples must be positive")
    opts = verification.VerifyOptions(samples=args.samples, m_values=_m_list(args.m), seed=args.seed)
    table = Table(["section", "check", "value", "bound", "passed"])
    failed = []
    out = sys.stdout if not args.output else sys.stderr
    for name in names:
        result = verification.SECTIONS[name](opts)
        status = "PASS" if result.passed else "FAIL"
        print(f"[{status}] {name}: {result.title}", file=out)
        for c in result.checks:
            mark = "ok " if c.passed else "BAD"
            print(f"    {mark} {c.name}: {c.value:.6g} (bound {c.bound:.6g})", file=out)
            table.add(name, c.name, c.value, c.bound, c.passed)
        for note in result.notes:
            print(f"    note: {note}", file=out)
        if not result.passed:
            failed.append(name)
    print(f"{len(names) - len(failed)}/{len(names)} sections passed", file=out)
    if failed:
        aliases = {v: k for k, v in verification.ALIASES.items()}
        print("failing: " + ", ".join(f"{f} ({aliases.get(f, f)})" for f in failed), file=out)
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(table.to_csv())
    return EXIT_FAIL if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="berrut-lab",
                                     description="Berrut interpolation on equispaced nodes.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--output", "-o", help="write to this file instead of stdout")
        p.add_argument("--format", choices=("csv", "text"), default="csv")

    p = sub.add_parser("interpolate", help="evaluate B_n f at points")
    p.add_argument("--fn", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--scheme", default="berrut", help="berrut or halved")
    p.add_argument("--x", action="append", required=True, help="point(s), repeatable or comma separated")
    common(p)
    p.set_defaults(func=cmd_interpolate)

    p = sub.add_parser("convergence", help="sup-norm errors over a ladder of n")
    p.add_argument("--fn", required=True)
    p.add_argument("--n", required=True, help="a:b, a:b:s or a:b:*k")
    p.add_argument("--parity", default="both")
    p.add_argument("--probes", type=int, default=2001)
    common(p)
    p.set_defaults(func=cmd_convergence)

    p = sub.add_parser("limits", help="limit sets at a rational or irrational point")
    where = p.add_mutually_exclusive_group(required=True)
    where.add_argument("--rational", help="a/b meaning x + 1 = a/b")
    where.add_argument("--irrational", type=float, help="x, declared irrational")
    p.add_argument("--fn")
    p.add_argument("--parity", default="both")
    common(p)
    p.set_defaults(func=cmd_limits)

    p = sub.add_parser("verify", help="run the self-check suite")
    p.add_argument("--only", action="append", help="section names or aliases, comma separated")
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--m", default="256,4096,65536", help="sawtooth sizes for the main-term section")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", "-o", help="also write the check table as CSV")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"berrut-lab {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
