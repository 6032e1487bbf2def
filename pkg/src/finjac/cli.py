"""Command-line front end: ``finjac <command> [options]``.

Every command prints one JSON object on stdout (or CSV with ``--format
csv``); diagnostics go to stderr.  Exit codes: 0 success, 1 verification
failure, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

import mpmath
import numpy as np

from . import jacobi, jtable, lineardiag, special, verify
from .ffunc import f_finite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# -- parsing -------------------------------------------------------------------


def parse_scalar(text: str, exact: bool):
    text = text.strip()
    if not text:
        raise UsageError("empty number")
    try:
        if exact:
            return Fraction(text)
        try:
            return float(Fraction(text))
        except ValueError:
            return complex(text.replace("i", "j"))
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"cannot parse number {text!r}") from exc


def parse_list(text: str, exact: bool) -> list:
    text = text.strip()
    if not text:
        return []
    return [parse_scalar(item, exact) for item in text.split(",")]


# -- formatting ----------------------------------------------------------------


def encode(value):
    """JSON-ready form: rationals as ``"p/q"`` strings, floats as numbers."""
    if isinstance(value, (list, tuple, np.ndarray)):
        return [encode(v) for v in value]
    if isinstance(value, bool):
        return value
    if isinstance(value, (int, Fraction)):
        return str(value)
    if isinstance(value, (mpmath.mpf, mpmath.mpc)):
        value = complex(value) if isinstance(value, mpmath.mpc) else float(value)
    if isinstance(value, (complex, np.complexfloating)):
        if value.imag == 0:
            return encode(float(value.real))
        return {"re": encode(float(value.real)), "im": encode(float(value.imag))}
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if value.is_integer() and abs(value) < 2**53:
            return int(value)
        return value
    return value


def emit(payload: dict, fmt: str, out=None) -> None:
    out = out or sys.stdout
    if fmt == "json":
        out.write(json.dumps(payload, separators=(",", ":")) + "\n")
        return
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["key", "index", "value"])
    for key, value in payload.items():
        if isinstance(value, list):
            for i, item in enumerate(value):
                writer.writerow([key, i, json.dumps(item) if isinstance(item, (list, dict)) else item])
        elif isinstance(value, dict):
            writer.writerow([key, "", json.dumps(value)])
        else:
            writer.writerow([key, "", value])
    out.write(buf.getvalue())


def _mode_name(exact: bool) -> str:
    return "exact" if exact else "float"


# -- commands ------------------------------------------------------------------


def cmd_f_eval(args) -> dict:
    seq = parse_list(args.seq, args.exact)
    value = f_finite(seq)
    mode = "exact" if not seq or args.exact else "float"
    return {"value": encode(value), "mode": mode}


def cmd_jmatrix(args) -> dict:
    w = parse_scalar(args.w, args.exact)
    evaluators = {
        "closed": jtable.j_entry,
        "recurrence": jtable.j_entry_recurrence,
        "f": jtable.j_entry_f,
    }
    value = evaluators[args.method](args.m, args.n, w)
    return {"m": args.m, "n": args.n, "value": encode(value), "mode": _mode_name(args.exact)}


def cmd_det(args) -> dict:
    y = parse_list(args.y, args.exact)
    w = parse_scalar(args.w, args.exact)
    if len(y) % 2 == 0:
        raise UsageError("--y needs an odd number 2d+1 of entries")
    oracle = jacobi.det_oracle(jacobi.JacobiMatrix(y, w, centered=True))
    out = {"oracle": encode(oracle), "mode": _mode_name(args.exact)}
    try:
        out["value"] = encode(jacobi.det_constant_offdiag(y, w))
        out["method"] = "formula"
    except (ZeroDivisionError, ValueError) as exc:
        print(f"formula not applicable ({exc}); using the recurrence", file=sys.stderr)
        out["value"] = out["oracle"]
        out["method"] = "oracle"
    return out


def cmd_charpoly(args) -> dict:
    # always exact: the coefficients are rational in w
    w = parse_scalar(args.w, exact=True)
    if args.d < 0:
        raise UsageError("--d must be nonnegative")
    methods = {
        "closed": lambda: lineardiag.charpoly_closed(args.d, w),
        "antisym": lambda: lineardiag.charpoly_via_antisym(args.d, w),
        "f": lambda: lineardiag.reduce_charpoly(lineardiag.charpoly_f(args.d, w), args.d),
        "oracle": lambda: lineardiag.reduce_charpoly(lineardiag.charpoly_det(args.d, w), args.d),
    }
    poly = methods[args.method]()
    coeffs = [poly.coeff(i) for i in range(2 * args.d + 1)]
    return {"d": args.d, "w": encode(w), "method": args.method, "coeffs": encode(coeffs)}


def cmd_spectrum(args) -> dict:
    w = parse_scalar(args.w, exact=False)
    if isinstance(w, complex):
        raise UsageError("spectrum needs real w")
    tol = args.tol if args.tol is not None else 1e-12
    res = lineardiag.spectrum(args.d, w, tol)
    out = {
        "d": args.d,
        "w": encode(w),
        "eigenvalues": encode(res.eigenvalues),
        "residuals": encode(res.residuals),
        "asymmetry": encode(res.asymmetry),
    }
    if args.vectors:
        out["eigenvectors"] = encode(res.eigenvectors.T)
    return out


def cmd_resolvent(args) -> dict:
    w = parse_scalar(args.w, args.exact)
    z = parse_scalar(args.z, args.exact)
    r = lineardiag.resolvent(args.d, w, z)
    return {"d": args.d, "matrix": encode(r), "mode": _mode_name(args.exact)}


def cmd_bessel(args) -> dict:
    nu = parse_scalar(args.nu, exact=False)
    w = parse_scalar(args.w, exact=False)
    value = special.bessel_j(nu, w, args.tol)
    return {"nu": encode(nu), "w": encode(w), "value": encode(value), "argument": encode(2 * w)}


def cmd_verify(args) -> dict:
    report = verify.run_suite(args.suite, args.cases, args.seed)
    print(f"{report.suite}: {report.wall_time_ms} ms", file=sys.stderr)
    for msg in report.messages:
        print(f"FAIL {msg}", file=sys.stderr)
    args.exit_code = EXIT_FAIL if report.failures else EXIT_OK
    return report.as_dict()


# -- parser --------------------------------------------------------------------


def _common(defaults: bool) -> argparse.ArgumentParser:
    """Shared flags; subcommands get suppressed defaults so either position works."""
    p = argparse.ArgumentParser(add_help=False)
    d = (lambda v: v) if defaults else (lambda v: argparse.SUPPRESS)
    p.add_argument("--exact", action="store_true", default=d(False), help="rational arithmetic")
    p.add_argument("--format", choices=("json", "csv"), default=d("json"))
    p.add_argument("--seed", type=int, default=d(0))
    p.add_argument("--tol", type=float, default=d(None))
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="finjac", parents=[_common(True)], description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    common = _common(False)

    p = sub.add_parser("f-eval", parents=[common], help="F of a finite sequence")
    p.add_argument("--seq", required=True, help='comma separated, e.g. "1,1/2,3"')
    p.set_defaults(func=cmd_f_eval)

    p = sub.add_parser("jmatrix", parents=[common], help="entry J(m, n; w)")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--w", required=True)
    p.add_argument("--method", choices=("closed", "recurrence", "f"), default="closed")
    p.set_defaults(func=cmd_jmatrix)

    p = sub.add_parser("det", parents=[common], help="det(diag(y) + w E+ + w E-)")
    p.add_argument("--y", required=True, help="y_-d, ..., y_d")
    p.add_argument("--w", required=True)
    p.set_defaults(func=cmd_det)

    p = sub.add_parser("charpoly", parents=[common], help="reduced characteristic polynomial of K(w)")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--w", required=True)
    p.add_argument("--method", choices=("closed", "antisym", "f", "oracle"), default="closed")
    p.set_defaults(func=cmd_charpoly)

    p = sub.add_parser("spectrum", parents=[common], help="eigenvalues of K(w)")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--w", required=True)
    p.add_argument("--vectors", action="store_true", help="include eigenvectors")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("resolvent", parents=[common], help="(K~(w) - z)^-1")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--w", required=True)
    p.add_argument("--z", required=True)
    p.set_defaults(func=cmd_resolvent)

    p = sub.add_parser("bessel", parents=[common], help="J_nu(2w) through F")
    p.add_argument("--nu", required=True)
    p.add_argument("--w", required=True)
    p.set_defaults(func=cmd_bessel)

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("--suite", choices=verify.SUITES + ("all",), required=True)
    p.add_argument("--cases", type=int, default=100)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    args.exit_code = EXIT_OK
    try:
        payload = args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except lineardiag.SpectralAccuracyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    emit(payload, args.format)
    return args.exit_code


if __name__ == "__main__":
    sys.exit(main())
