"""Command-line front end.

Exit codes: 0 on success (and, for ``check``, when the inequality holds),
1 when a checked inequality fails (a reproduction file is written),
2 on usage errors including malformed polynomial files.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import constants, families, halfstrip, inequality, trigpoly
from .reporting import emit_report

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def _float(text: str) -> float:
    v = float(text)
    if not math.isfinite(v):
        raise argparse.ArgumentTypeError(f"expected a finite number, got {text}")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sharpconj", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p, default="json"):
        p.add_argument("--format", choices=("json", "csv"), default=default)
        p.add_argument("--out", help="write output here instead of stdout")

    p = sub.add_parser("constant", help="A_p, Catalan's constant or pi^2/(32G)")
    which = p.add_mutually_exclusive_group(required=True)
    which.add_argument("--p", type=_float)
    which.add_argument("--catalan", action="store_true")
    which.add_argument("--corollary2", action="store_true")
    add_format(p)

    p = sub.add_parser("majorant", help="U_p(x, y) with error bound")
    p.add_argument("--p", type=_float, required=True)
    p.add_argument("--x", type=_float, required=True)
    p.add_argument("--y", type=_float, required=True)
    p.add_argument("--terms", type=_positive_int, help="series truncation J (default max(50, ceil(12/x)))")
    p.add_argument("--method", choices=("auto", "series", "integral"), default="auto")
    add_format(p)

    p = sub.add_parser("kernel", help="K_x(y): closed form, series and bound slack")
    p.add_argument("--x", type=_float, required=True)
    p.add_argument("--y", type=_float, required=True)
    p.add_argument("--terms", type=_positive_int, default=50)
    add_format(p)

    p = sub.add_parser("sharpness", help="g_p(x)/x on log-spaced x from x-max down to x-min")
    p.add_argument("--p", type=_float, required=True)
    p.add_argument("--x-min", type=_float, required=True)
    p.add_argument("--x-max", type=_float, required=True)
    p.add_argument("--points", type=_positive_int, default=10)
    add_format(p)

    p = sub.add_parser("check", help="certified check of the conjugate-function inequality")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--poly", help="polynomial JSON file")
    src.add_argument("--random", type=_positive_int, metavar="N", help="random-phase polynomial with N terms")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--p", type=_float, default=2.0)
    p.add_argument("--grid", type=_positive_int)
    p.add_argument("--corollary", type=int, choices=(1, 2), default=1)
    p.add_argument("--certificate", choices=trigpoly.CERTIFICATES, default="lipschitz")
    p.add_argument("--repro-dir", default=".", help="where a failing check writes its reproduction file")
    add_format(p)

    p = sub.add_parser("minimize", help="certified min of Re P and sup of |Im P|, |P|")
    p.add_argument("--poly", required=True)
    p.add_argument("--grid", type=_positive_int)
    p.add_argument("--certificate", choices=trigpoly.CERTIFICATES, default="lipschitz")
    add_format(p)

    p = sub.add_parser("sweep", help="order-sharpness sweep over N = 1, 2, 4, ..., max-n")
    p.add_argument("--family", choices=("rudin-shapiro", "chowla-interval"), default="rudin-shapiro")
    p.add_argument("--max-n", type=_positive_int, default=families.SWEEP_CAP)
    p.add_argument("--cap", type=_positive_int, default=families.SWEEP_CAP)
    p.add_argument("--grid-factor", type=_positive_int, default=16)
    p.add_argument("--certificate", choices=trigpoly.CERTIFICATES, default="bernstein")
    add_format(p, default="csv")
    return parser


def load_polynomial(path: str) -> trigpoly.TrigPoly:
    try:
        data = json.loads(Path(path).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: invalid JSON: {exc}") from None
    try:
        return trigpoly.TrigPoly.from_json(data)
    except trigpoly.PolynomialError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _write(args, payload: bytes) -> None:
    if args.out:
        try:
            Path(args.out).write_bytes(payload)
        except OSError as exc:
            raise UsageError(f"cannot write {args.out}: {exc}") from None
    else:
        sys.stdout.write(payload.decode())
        sys.stdout.flush()


def _cmd_constant(args) -> int:
    if args.catalan:
        r, name = constants.catalan(), "catalan"
    elif args.corollary2:
        r, name = constants.corollary2_constant(), "pi^2/(32G)"
    else:
        r, name = constants.sharp_constant_Ap(args.p), f"A_{args.p:g}"
    rec = {"constant": name, "value": r.value, "abs_error_estimate": r.abs_error_estimate, "method": r.method}
    if not args.catalan and not args.corollary2:
        rec = {"p": args.p, **rec}
    _write(args, emit_report(rec, args.format))
    return EXIT_OK


def _cmd_majorant(args) -> int:
    u = halfstrip.U(args.p, args.x, args.y, args.terms, args.method)
    rec = {"p": args.p, "x": args.x, "y": args.y, "U": u.value, "W": 1.0 - u.value,
           "error_bound": u.error_bound, "method": u.method, "terms": u.terms,
           "abs_y_pow_p": abs(args.y) ** args.p}
    _write(args, emit_report(rec, args.format))
    return EXIT_OK


def _cmd_kernel(args) -> int:
    closed = halfstrip.kernel_closed(args.x, args.y)
    ser = halfstrip.kernel_series(args.x, args.y, args.terms)
    rec = {"x": args.x, "y": args.y, "closed": closed, "series": ser.value,
           "tail_bound": ser.error_bound, "terms": ser.terms}
    if 0 < args.y <= 1:
        chk = halfstrip.kernel_bound_check(args.x, args.y)
        rec.update(bound=1.0 / (2.0 * math.sin(0.5 * math.pi * args.y)),
                   slack=float(chk.slack), certificate=float(chk.certificate))
    _write(args, emit_report(rec, args.format))
    return EXIT_OK


def _cmd_sharpness(args) -> int:
    if not 0 < args.x_min < args.x_max:
        raise UsageError("need 0 < x-min < x-max")
    xs = np.geomspace(args.x_max, args.x_min, args.points) if args.points > 1 else np.array([args.x_min])
    a = constants.sharp_constant_Ap(args.p)
    recs = []
    for x in xs:
        gv = halfstrip.g(args.p, float(x))
        recs.append({"p": args.p, "x": float(x), "g": gv.value, "error_bound": gv.error_bound,
                     "ratio": gv.value / x, "A_p": a.value, "method": gv.method})
    _write(args, emit_report(recs, args.format))
    return EXIT_OK


def _cmd_check(args) -> int:
    if args.poly:
        P = load_polynomial(args.poly)
    else:
        P = families.random_family(families.FamilySpec("random_phase", args.random, args.seed))
    K = args.grid
    try:
        if args.corollary == 2:
            if args.p != 2.0:
                raise UsageError("--corollary 2 is the p = 2 case")
            report = inequality.check_corollary2(P, K, certificate=args.certificate, repro_dir=args.repro_dir)
        else:
            report = inequality.check_corollary1(P, args.p, K, certificate=args.certificate,
                                                 repro_dir=args.repro_dir)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _write(args, emit_report(report, args.format))
    return EXIT_OK if report.holds else EXIT_FAIL


def _cmd_minimize(args) -> int:
    P = load_polynomial(args.poly)
    try:
        m = trigpoly.certified_min(P.real_part(), args.grid, args.certificate)
        s = trigpoly.certified_sup_abs(P.imag_part(), args.grid, args.certificate)
        mod = trigpoly.certified_sup_modulus(P, args.grid, args.certificate)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    rec = {"grid": m.grid, "certificate": m.certificate,
           "min_f": m.refined_value, "min_f_lower": m.lower, "min_f_upper": m.upper, "argmin": m.arg,
           "M_lower": -m.upper, "M_upper": -m.lower,
           "sup_conj": s.refined_value, "sup_conj_lower": s.lower, "sup_conj_upper": s.upper,
           "sup_modulus_lower": mod.lower, "sup_modulus_upper": mod.upper}
    _write(args, emit_report(rec, args.format))
    return EXIT_OK


def _cmd_sweep(args) -> int:
    if args.max_n > args.cap:
        raise UsageError(f"--max-n {args.max_n} exceeds the cap {args.cap}")
    sizes = [1 << m for m in range(args.max_n.bit_length()) if (1 << m) <= args.max_n]
    family = "rudin_shapiro" if args.family == "rudin-shapiro" else "chowla_interval"
    rows = families.sharpness_sweep(sizes, args.cap, args.grid_factor, args.certificate, family)
    _write(args, emit_report(rows, args.format))
    return EXIT_OK


_COMMANDS = {
    "constant": _cmd_constant,
    "majorant": _cmd_majorant,
    "kernel": _cmd_kernel,
    "sharpness": _cmd_sharpness,
    "check": _cmd_check,
    "minimize": _cmd_minimize,
    "sweep": _cmd_sweep,
}


def parse_and_dispatch(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return _COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"sharpconj {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"sharpconj {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(parse_and_dispatch())


if __name__ == "__main__":
    main()
