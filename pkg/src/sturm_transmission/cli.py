"""Command-line front end.

Exit status: 0 on success, 1 on a computational failure (for instance a
Green's function requested at an eigenvalue), 2 on usage or input errors.
"""
from __future__ import annotations

import argparse
import csv
import io
import os
import sys
import tempfile

import numpy as np

from .checks import run_checks
from .config import parse_config, parse_rhs, parse_scalar
from .errors import (BadRange, ConfigSyntaxError, MissingKey, ProblemValidationError,
                     SturmTransmissionError)
from .greens import green_eval, resolvent_apply
from .ivp import Tolerances
from .problem import LEFT, RIGHT
from .shooting import char_fn
from .spectrum import DEFAULT_TOL_LAMBDA, eigenfunction, find_eigenvalues


# lower end of the eigenvalue window when eigfun gets no --min
DEFAULT_EIGFUN_MIN = -100.0


class UsageError(Exception):
    pass


def fmt(x) -> str:
    return f"{float(x):.17g}"


def _split(z):
    """Real columns for real data, (re, im) otherwise."""
    return [fmt(np.real(z)), fmt(np.imag(z))]


def _emit(rows, header, out):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    text = buf.getvalue()
    if out is None or out == "-":
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(out))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=".csv")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, out)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _read(path):
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _tolerances(args):
    return Tolerances(abs_tol=args.abs_tol, rel_tol=args.rel_tol)


def _load(args):
    return parse_config(_read(args.config))


def _lambda_arg(text):
    try:
        return parse_scalar(text)
    except ConfigSyntaxError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def cmd_validate(args):
    p = _load(args)
    m = p.minors
    print(f"valid ({p.mode})")
    print(f"Delta12 = {fmt(m.d12)}  Delta34 = {fmt(m.d34)}  Delta0 = {fmt(p.delta0)}")
    print(f"Delta13 = {fmt(m.d13)}  Delta14 = {fmt(m.d14)}  Delta23 = {fmt(m.d23)}  Delta24 = {fmt(m.d24)}")
    for w in p.warnings:
        print(f"warning: {w}", file=sys.stderr)
    return 0


def cmd_eigs(args):
    p = _load(args)
    evs = find_eigenvalues(p, args.min, args.max, _tolerances(args), args.tol_lambda)
    rows = [[ev.index, fmt(ev.lam), fmt(ev.omega_residual)] for ev in evs]
    _emit(rows, ["index", "lambda", "omega_residual"], args.out)
    return 0


def _first_eigenvalues(p, count, tol, tol_lambda, lmin=None, lmax=None):
    """At least ``count`` eigenvalues from ``lmin`` upwards, widening the window."""
    lo = DEFAULT_EIGFUN_MIN if lmin is None else lmin
    hi = max(lo + 100.0, 100.0) if lmax is None else lmax
    while True:
        evs = find_eigenvalues(p, lo, hi, tol, tol_lambda)
        if len(evs) >= count or lmax is not None or hi > 1e7:
            return evs
        hi = lo + 4.0 * (hi - lo)


def cmd_eigfun(args):
    p = _load(args)
    tol = _tolerances(args)
    if args.index < 0:
        raise UsageError("--index must be non-negative")
    if args.min is not None and args.max is not None:
        evs = find_eigenvalues(p, args.min, args.max, tol, args.tol_lambda)
    else:
        evs = _first_eigenvalues(p, args.index + 1, tol, args.tol_lambda, args.min, args.max)
    if args.index >= len(evs):
        raise UsageError(f"index {args.index} out of range: found {len(evs)} eigenvalues")
    pair = eigenfunction(p, evs[args.index].lam, tol, args.index)
    u = pair.eigenfunction
    rows = []
    for side in (LEFT, RIGHT):
        lo, hi = p.interval.side_bounds(side)
        x = np.linspace(lo, hi, args.samples)
        for xi, ui, dui in zip(x, u.piece(side)(x), u.dpiece(side)(x)):
            rows.append([fmt(xi), fmt(ui), fmt(dui)])
    rows.append(["Tb_prime", fmt(u.f1), ""])
    _emit(rows, ["x", "u", "du"], args.out)
    return 0


def cmd_charfn(args):
    p = _load(args)
    tol = _tolerances(args)
    rows = []
    for lam in np.linspace(args.min, args.max, args.n):
        b = char_fn(p, float(lam), tol)
        rows.append([fmt(lam), fmt(b.w_minus), fmt(b.w_plus), fmt(b.omega)])
    _emit(rows, ["lambda", "w_minus", "w_plus", "omega"], args.out)
    return 0


def _format_scalar(z):
    if np.imag(z) == 0:
        return fmt(np.real(z))
    im = np.imag(z)
    return f"{fmt(np.real(z))}{'+' if im >= 0 else '-'}{fmt(abs(im))}i"


def cmd_green(args):
    p = _load(args)
    basis = char_fn(p, args.lam, _tolerances(args))
    if args.x is not None and args.y is not None:
        print(_format_scalar(green_eval(p, basis, args.x, args.y)))
        return 0
    if args.nx is None or args.ny is None:
        raise UsageError("give either --x and --y or --nx and --ny")
    xs = p.a + (np.arange(args.nx) + 0.5) * (p.b - p.a) / args.nx
    ys = p.a + (np.arange(args.ny) + 0.5) * (p.b - p.a) / args.ny
    is_complex = np.imag(args.lam) != 0
    rows = []
    for x in xs:
        for y in ys:
            if x == p.c or y == p.c:
                continue
            g = green_eval(p, basis, x, y)
            rows.append([fmt(x), fmt(y)] + (_split(g) if is_complex else [fmt(g)]))
    header = ["x", "y"] + (["G_re", "G_im"] if is_complex else ["G"])
    _emit(rows, header, args.out)
    return 0


def cmd_resolve(args):
    p = _load(args)
    F = parse_rhs(_read(args.rhs))
    basis = char_fn(p, args.lam, _tolerances(args))
    Y = resolvent_apply(p, basis, F)
    is_complex = np.iscomplexobj(basis.omega) or np.imag(F.f1) != 0
    rows = []
    for side in (LEFT, RIGHT):
        lo, hi = p.interval.side_bounds(side)
        x = np.linspace(lo, hi, args.samples)
        for xi, yi, dyi in zip(x, Y.piece(side)(x), Y.dpiece(side)(x)):
            if is_complex:
                rows.append([fmt(xi)] + _split(yi) + _split(dyi))
            else:
                rows.append([fmt(xi), fmt(yi), fmt(dyi)])
    if is_complex:
        header = ["x", "Y_re", "Y_im", "dY_re", "dY_im"]
        rows.append(["second_component"] + _split(Y.f1) + ["", ""])
    else:
        header = ["x", "Y", "dY"]
        rows.append(["second_component", fmt(Y.f1), ""])
    _emit(rows, header, args.out)
    return 0


def cmd_check(args):
    p = _load(args)
    results = run_checks(p, _tolerances(args), seed=args.seed)
    for r in results:
        print(r.line())
    return 0 if all(r.passed for r in results) else 1


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("config", help="problem file")
    common.add_argument("--tol-lambda", type=float, default=DEFAULT_TOL_LAMBDA,
                        help="relative eigenvalue tolerance (default %(default)g)")
    common.add_argument("--abs-tol", type=float, default=1e-12,
                        help="integrator absolute tolerance (default %(default)g)")
    common.add_argument("--rel-tol", type=float, default=1e-10,
                        help="integrator relative tolerance (default %(default)g)")

    parser = argparse.ArgumentParser(
        prog="sturm-transmission",
        description="Sturm-Liouville problems with an interior transmission point "
                    "and a lambda-dependent boundary condition.")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("validate", parents=[common], help="check a problem file")
    sp.set_defaults(func=cmd_validate)

    sp = sub.add_parser("eigs", parents=[common], help="eigenvalues in a range")
    sp.add_argument("--min", type=float, required=True)
    sp.add_argument("--max", type=float, required=True)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_eigs)

    sp = sub.add_parser("eigfun", parents=[common], help="sample one eigenfunction")
    sp.add_argument("--index", type=int, required=True,
                    help="rank of the eigenvalue counted from --min, starting at 0")
    sp.add_argument("--min", type=float, help="lower end of the window (default -100)")
    sp.add_argument("--max", type=float, help="upper end (default: widened until found)")
    sp.add_argument("--samples", type=int, default=101, help="points per side")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_eigfun)

    sp = sub.add_parser("charfn", parents=[common], help="tabulate the characteristic function")
    sp.add_argument("--min", type=float, required=True)
    sp.add_argument("--max", type=float, required=True)
    sp.add_argument("--n", type=int, default=101)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_charfn)

    sp = sub.add_parser("green", parents=[common], help="Green's function values")
    sp.add_argument("--lambda", dest="lam", type=_lambda_arg, required=True)
    sp.add_argument("--x", type=float)
    sp.add_argument("--y", type=float)
    sp.add_argument("--nx", type=int)
    sp.add_argument("--ny", type=int)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_green)

    sp = sub.add_parser("resolve", parents=[common], help="apply the resolvent to a right-hand side")
    sp.add_argument("--lambda", dest="lam", type=_lambda_arg, required=True)
    sp.add_argument("--rhs", required=True, help="right-hand-side file")
    sp.add_argument("--samples", type=int, default=101, help="points per side")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_resolve)

    sp = sub.add_parser("check", parents=[common], help="run the invariant suite")
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_check)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (UsageError, ConfigSyntaxError, MissingKey, ProblemValidationError, BadRange) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (SturmTransmissionError, ArithmeticError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
