"""Command line front end: ``paratrig {eval,table,compare,figure,osc}``.

All output is CSV with ``#`` comment lines. Floats are written with
``repr``, the shortest string that parses back to the same double.

Exit status: 0 success, 2 invalid input, 3 numerical failure,
4 a tolerance check failed.
"""

from __future__ import annotations

import argparse
import io
import itertools
import math
import sys
import warnings

import numpy as np

from . import gentrig, oscillator, parabolic, quintic
from .gentrig import PARABOLIC, QUINTIC, Params
from .numerics import DEFAULT_TOL, DomainError, NumericalError, Tolerances

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_NUMERICAL = 3
EXIT_TOLERANCE = 4

CLOSED_FORM_BACKENDS = ("closed", "hyper", "series")
FAMILY_BACKENDS = ("area", "ode")
OSC_RESIDUAL_LIMIT = 1e-3
FAULT_SIZE = 1e-6

PAIR_TOL_EXACT = 1e-12  # closed <-> hyper
PAIR_TOL_AREA = 1e-10  # explicit formulas <-> area inversion
PAIR_TOL_ODE = 1e-8  # anything <-> ode


class UsageError(Exception):
    """Invalid combination of arguments; maps to exit status 2."""


def fmt(x) -> str:
    return repr(float(x))


def _row(values) -> str:
    return ",".join(fmt(v) for v in values)


def _tolerances(args):
    abs_tol = DEFAULT_TOL.abs_tol if args.abs_tol is None else args.abs_tol
    rel_tol = DEFAULT_TOL.rel_tol if args.rel_tol is None else args.rel_tol
    try:
        tol = Tolerances(abs_tol=abs_tol, rel_tol=rel_tol)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    # the ODE backend keeps its own tighter default unless asked otherwise
    ode_tol = None if args.abs_tol is None and args.rel_tol is None else tol
    return tol, ode_tol


def _params(args) -> Params:
    try:
        return Params(args.p, args.q)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _default_backend(params):
    return "closed" if params == PARABOLIC else "area"


def _check_backend(params, backend, phis):
    if backend in CLOSED_FORM_BACKENDS and params != PARABOLIC:
        raise UsageError(f"backend {backend!r} is only available for p=2, q=1")
    if backend == "series":
        worst = max(abs(x) for x in phis)
        if worst > parabolic.SERIES_WINDOW:
            raise UsageError(
                f"series backend is limited to |phi| <= {parabolic.SERIES_WINDOW}, got {worst!r}"
            )


def _evaluate(params, backend, phis, tol, ode_tol, faults=()):
    """(C, S) pairs for a non-decreasing list of phi."""
    if backend == "ode":
        pairs = [(v.c, v.s) for v in gentrig.eval_ode_many(params, phis, ode_tol)]
    elif backend == "area":
        pairs = [(v.c, v.s) for v in (gentrig.eval_area(params, x, tol) for x in phis)]
    elif backend == "quintic":
        pairs = [(c, 1.0 - c**4) for c in (quintic.cosm(x, tol) for x in phis)]
    else:
        pairs = [(v.cosp, v.sinp) for v in (parabolic.evaluate(x, backend) for x in phis)]
    if backend in faults:
        pairs = [(c + FAULT_SIZE, s) for c, s in pairs]
    return pairs


def _warn_window(params, backend, phis):
    if params == PARABOLIC and backend in ("closed", "hyper"):
        if any(not 0.0 <= x <= parabolic.PHI_END for x in phis):
            warnings.warn("phi outside the geometric window [0, 8/3]", parabolic.DomainWarning)


def _records(params, backend, phis, tol, ode_tol):
    pairs = _evaluate(params, backend, phis, tol, ode_tol)
    if params != PARABOLIC:
        return ["phi", "c", "s"], [(x, c, s) for x, (c, s) in zip(phis, pairs)]
    gd = parabolic.gdp_many(phis, tol)
    rows = [(x, c, s, math.hypot(c, s), g) for x, (c, s), g in zip(phis, pairs, gd)]
    return ["phi", "c", "s", "ip", "gdp"], rows


def _grid(start, stop, steps):
    return [start + (stop - start) * i / steps for i in range(steps + 1)]


def cmd_eval(args, out):
    params = _params(args)
    tol, ode_tol = _tolerances(args)
    backend = args.backend or _default_backend(params)
    _check_backend(params, backend, [args.phi])
    _warn_window(params, backend, [args.phi])
    (c, s), = _evaluate(params, backend, [args.phi], tol, ode_tol)
    values = [args.phi, c, s]
    if params == PARABOLIC:
        values += [math.hypot(c, s), parabolic.gdp(args.phi, parabolic.GdMode.CONTINUOUS, tol)]
    out.write(_row(values) + "\n")
    return EXIT_OK


def _range(args, params, tol):
    start = 0.0 if args.phi_from is None else args.phi_from
    stop = gentrig.phi_max(params, tol) if args.phi_to is None else args.phi_to
    if not start < stop:
        raise UsageError(f"--from ({start!r}) must be smaller than --to ({stop!r})")
    if args.steps < 1:
        raise UsageError("--steps must be at least 1")
    return start, stop


def cmd_table(args, out):
    params = _params(args)
    tol, ode_tol = _tolerances(args)
    backend = args.backend or _default_backend(params)
    start, stop = _range(args, params, tol)
    phis = _grid(start, stop, args.steps)
    _check_backend(params, backend, phis)
    _warn_window(params, backend, phis)
    header, rows = _records(params, backend, phis, tol, ode_tol)
    out.write(f"# params={params} backend={backend}\n")
    out.write(",".join(header) + "\n")
    for r in rows:
        out.write(_row(r) + "\n")
    return EXIT_OK


def compare_backends(params):
    if params == PARABOLIC:
        return ("closed", "hyper", "area", "ode")
    if params == QUINTIC:
        return ("quintic", "area", "ode")
    return FAMILY_BACKENDS


def pair_tolerance(a, b):
    if "ode" in (a, b):
        return PAIR_TOL_ODE
    if {a, b} == {"closed", "hyper"}:
        return PAIR_TOL_EXACT
    return PAIR_TOL_AREA


def cmd_compare(args, out):
    params = _params(args)
    tol, ode_tol = _tolerances(args)
    start, stop = _range(args, params, tol)
    phis = _grid(start, stop, args.steps)
    faults = tuple(args.inject_fault or ())
    names = compare_backends(params)
    unknown = [f for f in faults if f not in names]
    if unknown:
        raise UsageError(f"cannot inject a fault into {unknown}; backends are {names}")
    results = {b: _evaluate(params, b, phis, tol, ode_tol, faults) for b in names}

    out.write(f"# params={params} from={fmt(start)} to={fmt(stop)} points={len(phis)}\n")
    out.write("backend_a,backend_b,max_abs_diff,tolerance,status\n")
    failed = False
    for a, b in itertools.combinations(names, 2):
        diff = max(
            max(abs(ca - cb), abs(sa - sb))
            for (ca, sa), (cb, sb) in zip(results[a], results[b])
        )
        limit = pair_tolerance(a, b)
        ok = diff <= limit
        failed |= not ok
        out.write(f"{a},{b},{fmt(diff)},{fmt(limit)},{'ok' if ok else 'FAIL'}\n")
    return EXIT_TOLERANCE if failed else EXIT_OK


FIGURE_POINTS = 512


def cmd_figure(args, out):
    tol, _ = _tolerances(args)
    phis = np.linspace(0.0, parabolic.PHI_END, FIGURE_POINTS)
    if args.id == "fig5":
        out.write("# parabolic cosine and sine on [0, 8/3]\n")
        out.write("phi,cosp,sinp\n")
        for x in phis:
            out.write(_row((x, parabolic.cosp_closed(x), parabolic.sinp_closed(x))) + "\n")
    else:
        half_step = 0.5 * (phis[1] - phis[0])
        out.write("# principal value atan(tgp(phi)); jumps at phi* = 4/3\n")
        out.write("phi,gdp_raw\n")
        for x in phis:
            if abs(x - parabolic.PHI_STAR) < half_step:
                continue
            out.write(_row((x, parabolic.gdp(x, parabolic.GdMode.RAW, tol))) + "\n")
    return EXIT_OK


def cmd_osc(args, out):
    tol, _ = _tolerances(args)
    if args.phi_to is None or not args.phi_to > 0:
        raise UsageError("--to must be positive")
    if args.steps < 3:
        raise UsageError("--steps must be at least 3 for a meaningful residual")
    coefficient = oscillator.builtin(args.coef)
    grid = np.linspace(0.0, args.phi_to, args.steps + 1)
    problem = oscillator.OscillatorProblem(coefficient, args.alpha, args.beta, grid)
    y = oscillator.solve(problem, tol)
    res = oscillator.residual(problem, y)
    out.write(f"# A={coefficient.name} alpha={fmt(args.alpha)} beta={fmt(args.beta)}\n")
    out.write("phi,y\n")
    for x, v in zip(grid, y):
        out.write(_row((x, v)) + "\n")
    out.write(f"# residual = {fmt(res)}\n")
    return EXIT_TOLERANCE if res > OSC_RESIDUAL_LIMIT else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="paratrig",
        description="Parabolic and generalized trigonometric functions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", default="-", help="output file (default: stdout)")
    common.add_argument("--abs-tol", type=float, default=None)
    common.add_argument("--rel-tol", type=float, default=None)

    family = argparse.ArgumentParser(add_help=False)
    family.add_argument("--p", type=int, default=2)
    family.add_argument("--q", type=int, default=1)

    span = argparse.ArgumentParser(add_help=False)
    span.add_argument("--from", dest="phi_from", type=float, default=None)
    span.add_argument("--to", dest="phi_to", type=float, default=None)
    span.add_argument("--steps", type=int, default=100)

    backends = CLOSED_FORM_BACKENDS + FAMILY_BACKENDS

    p = sub.add_parser("eval", parents=[common, family], help="evaluate at one phi")
    p.add_argument("--phi", type=float, required=True)
    p.add_argument("--backend", choices=backends, default=None)
    p.set_defaults(handler=cmd_eval)

    p = sub.add_parser("table", parents=[common, family, span], help="tabulate over a range")
    p.add_argument("--backend", choices=backends, default=None)
    p.set_defaults(handler=cmd_table)

    p = sub.add_parser("compare", parents=[common, family, span], help="cross-check backends")
    p.add_argument("--inject-fault", action="append", metavar="BACKEND", help=argparse.SUPPRESS)
    p.set_defaults(handler=cmd_compare)

    p = sub.add_parser("figure", parents=[common], help="emit figure data")
    p.add_argument("id", choices=("fig5", "fig6"))
    p.set_defaults(handler=cmd_figure)

    p = sub.add_parser("osc", parents=[common], help="solve the oscillator on a grid")
    p.add_argument("--coef", choices=sorted(oscillator.BUILTIN_COEFFICIENTS), default="constant")
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--beta", type=float, default=0.0)
    p.add_argument("--to", dest="phi_to", type=float, default=None)
    p.add_argument("--steps", type=int, default=1000)
    p.set_defaults(handler=cmd_osc)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    buffer = io.StringIO()
    try:
        status = args.handler(args, buffer)
    except (UsageError, DomainError, ValueError) as exc:
        print(f"paratrig: error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except NumericalError as exc:
        print(f"paratrig: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL

    text = buffer.getvalue()
    if args.out == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        try:
            with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"paratrig: cannot write {args.out}: {exc}", file=sys.stderr)
            return EXIT_INVALID
    return status


if __name__ == "__main__":
    sys.exit(main())
