"""Batch command-line front end.

Every verification and transform is exposed as a subcommand emitting one
JSON line per check: {"check", "inputs", "value", "expected", "abs_error",
"pass", "runtime_ms"}.  Floating values are printed with 15 significant
digits and rationals exactly, so identical inputs give byte-identical
output.  Exit code 0 means every check passed, 1 means a failed or flagged
check, 2 a usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from .suite import ALL_CHECKS, CheckReport, run_suite

F = Fraction


def format_float(x: float) -> str:
    return f"{x:.15g}"


def format_complex(z: complex) -> str:
    z = complex(z)
    re, im = format_float(z.real), format_float(abs(z.imag))
    sign = "+" if z.imag >= 0 else "-"
    return f"{re}{sign}{im}i"


def format_value(v) -> str:
    if isinstance(v, str):
        return v
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, complex):
        return format_complex(v)
    if isinstance(v, float):
        return format_float(v)
    return str(v)


def emit(report: CheckReport, stream=None, timings: bool = False):
    stream = stream if stream is not None else sys.stdout
    line = {
        "check": report.check,
        "inputs": {k: format_value(v) if isinstance(v, (Fraction, complex, float)) else v
                   for k, v in report.inputs.items()},
        "value": format_value(report.value),
        "expected": format_value(report.expected),
        "abs_error": format_float(report.abs_error),
        "pass": report.passed,
    }
    if timings:
        # timings are gated so that default output stays byte-identical
        # across runs of identical inputs
        line["runtime_ms"] = format_float(round(report.runtime_ms, 3))
    stream.write(json.dumps(line, sort_keys=True) + "\n")


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational literal: {text!r}") from exc


def _alpha(text: str) -> complex:
    try:
        if "," in text:
            re, im = text.split(",", 1)
            return complex(float(re), float(im))
        return complex(float(text), 0.0)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"alpha must be 're,im': {text!r}") from exc


def _check(name: str, inputs: dict, value, expected, tol: float, t0: float,
           exact: bool = False) -> CheckReport:
    if exact:
        err = 0.0 if value == expected else float("inf")
    else:
        err = abs(complex(value) - complex(expected))
    return CheckReport(name, inputs, value, expected, err, err <= tol,
                       (time.perf_counter() - t0) * 1000.0)


def _load_phi(source: str):
    from .bruhat import parse_schwartz_bruhat

    text = source
    if source.startswith("@"):
        with open(source[1:], "r", encoding="utf-8") as fh:
            text = fh.read()
    return parse_schwartz_bruhat(text)


def cmd_norm(args) -> list[CheckReport]:
    from .padic import padic_norm

    t0 = time.perf_counter()
    value = padic_norm(args.r, args.p)
    return [_check("padic-norm", {"r": str(args.r), "p": args.p}, value, value,
                   0.0, t0, exact=True)]


def cmd_frac(args) -> list[CheckReport]:
    from .padic import frac_part, valuation

    t0 = time.perf_counter()
    q = frac_part(args.r, args.p)
    v = valuation(args.r - q, args.p)
    ok = (not v.is_infinite and v.value >= 0) or v.is_infinite
    rep = _check("frac-part", {"r": str(args.r), "p": args.p}, q, q, 0.0, t0, exact=True)
    rep.passed = ok
    return [rep]


def cmd_chi(args) -> list[CheckReport]:
    from .characters import chi_p, chi_principal_phase

    t0 = time.perf_counter()
    if args.p is not None:
        ph = chi_p(args.r, args.p).phase
        return [_check("chi-p", {"r": str(args.r), "p": args.p},
                       ph, ph, 0.0, t0, exact=True)]
    ph = chi_principal_phase(args.r).phase
    return [_check("chi-principal", {"r": str(args.r)}, ph, F(0), 0.0, t0, exact=True)]


def cmd_pair(args) -> list[CheckReport]:
    from .adeles import principal_adele, principal_idele
    from .distributions import (
        chi_distribution,
        chi_quadratic_distribution,
        delta_distribution,
        pair,
        pi_alpha_distribution,
    )

    phi = _load_phi(args.phi)
    t0 = time.perf_counter()
    if args.dist == "delta":
        dist = delta_distribution()
    elif args.dist == "chi":
        dist = chi_distribution()
    elif args.dist == "chi-quad":
        dist = chi_quadratic_distribution(
            principal_idele(args.a if args.a is not None else F(1)),
            principal_adele(args.b if args.b is not None else F(0)),
        )
    elif args.dist == "pi-alpha":
        dist = pi_alpha_distribution(args.alpha if args.alpha is not None else 2.0)
    else:  # pragma: no cover - argparse restricts choices
        raise SystemExit(2)
    value = pair(dist, phi)
    rep = _check("pair", {"dist": args.dist}, value, value, float("inf"), t0)
    rep.passed = True
    rep.abs_error = 0.0
    rep.expected = "n/a"
    return [rep]


def cmd_gauss(args) -> list[CheckReport]:
    from .gauss import REAL_PLACE, gauss_integral_p_exact, gauss_integral_v
    from .integrate import SphereDecompositionPlan, fresnel_regularized, integrate_qp

    t0 = time.perf_counter()
    if args.p is None:
        value = gauss_integral_v(REAL_PLACE, float(args.a), float(args.b))
        oracle, est = fresnel_regularized(float(args.a), float(args.b))
        return [_check("gauss-real", {"a": str(args.a), "b": str(args.b)},
                       value, oracle, max(args.tolerance, est * 4), t0)]
    plan = SphereDecompositionPlan(
        j_high=args.sphere_range, refinement_cap=args.refinement_cap
    )
    oracle = integrate_qp(args.p, quad=(args.a, args.b), plan=plan)
    closed = gauss_integral_p_exact(args.p, args.a, args.b)
    rep = _check(
        "gauss-p",
        {"p": args.p, "a": str(args.a), "b": str(args.b)},
        closed.to_complex(),
        oracle.value.to_complex(),
        args.tolerance,
        t0,
    )
    rep.passed = oracle.stabilized and (oracle.value == closed)
    rep.abs_error = 0.0 if rep.passed else rep.abs_error
    return [rep]


def cmd_product_check(args) -> list[CheckReport]:
    from .gauss import product_formula_check

    t0 = time.perf_counter()
    value = product_formula_check(args.a, args.b)
    return [_check("product-check", {"a": str(args.a), "b": str(args.b)},
                   value, 1 + 0j, args.tolerance, t0)]


def cmd_lambda_check(args) -> list[CheckReport]:
    from .gauss import lambda_product_check

    t0 = time.perf_counter()
    value = lambda_product_check(args.a)
    return [_check("lambda-check", {"a": str(args.a)}, value, 1 + 0j,
                   args.tolerance, t0)]


def cmd_mellin(args) -> list[CheckReport]:
    from .mellin import phi_p

    phi = _load_phi(args.phi)
    t0 = time.perf_counter()
    total = 0j
    for coeff, elem in phi.elements:
        total += coeff.to_complex() * phi_p(elem, args.alpha).value
    return [CheckReport(
        "mellin", {"alpha": format_complex(args.alpha)}, total, "n/a",
        0.0, True, (time.perf_counter() - t0) * 1000.0,
    )]


def cmd_tate(args) -> list[CheckReport]:
    from .mellin import tate_check

    phi = _load_phi(args.phi)
    t0 = time.perf_counter()
    worst = 0.0
    for _, elem in phi.elements:
        worst = max(worst, tate_check(elem, args.alpha))
    return [_check("tate", {"alpha": format_complex(args.alpha)}, worst, 0.0,
                   args.tolerance, t0)]


def cmd_zeta_fe(args) -> list[CheckReport]:
    from .mellin import functional_equation_residual

    t0 = time.perf_counter()
    residual = functional_equation_residual(args.alpha)
    return [_check("zeta-fe", {"alpha": format_complex(args.alpha)},
                   residual, 0.0, args.tolerance, t0)]


def cmd_oscillator_check(args) -> list[CheckReport]:
    from .bruhat import PAdicTestFunction
    from .oscillator import eigen_check
    from .padic import from_rational

    t0 = time.perf_counter()
    t = from_rational(args.t, args.p, args.precision)
    samples = [Fraction(s) for s in args.samples.split(",")] if args.samples else [
        F(0), F(1), F(1, args.p), F(args.p),
    ]
    dev = eigen_check(args.p, t, PAdicTestFunction.omega(args.p), args.energy, samples)
    return [_check(
        "oscillator-check",
        {"p": args.p, "t": str(args.t), "precision": args.precision,
         "energy": str(args.energy)},
        dev, 0.0, args.tolerance, t0,
    )]


def cmd_calibrate_lambda(args) -> list[CheckReport]:
    from .gauss import calibrate_lambda_p, lambda_p

    t0 = time.perf_counter()
    table = calibrate_lambda_p(args.p)
    reports = []
    for a, measured in sorted(table.items()):
        frozen = lambda_p(args.p, a).as_cyclo()
        ok = measured == frozen
        reports.append(CheckReport(
            "calibrate-lambda",
            {"p": args.p, "a": str(a)},
            format_complex(measured.to_complex()),
            format_complex(frozen.to_complex()),
            0.0 if ok else float("inf"),
            ok,
            (time.perf_counter() - t0) * 1000.0,
        ))
        t0 = time.perf_counter()
    return reports


def cmd_suite(args) -> list[CheckReport]:
    return run_suite(only=args.only)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="adelic",
        description="Exact p-adic/adelic analysis checks with JSON-line reports",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp, tol=1e-10):
        sp.add_argument("--tolerance", type=float, default=tol)
        sp.add_argument("--json", action="store_true", help="JSON lines (default)")
        sp.add_argument("--timings", action="store_true",
                        help="include runtime_ms (breaks byte-determinism)")

    sp = sub.add_parser("norm", help="p-adic norm of a rational")
    sp.add_argument("-r", type=_rational, required=True)
    sp.add_argument("-p", type=int, required=True)
    common(sp)
    sp.set_defaults(fn=cmd_norm)

    sp = sub.add_parser("frac", help="p-adic fractional part")
    sp.add_argument("-r", type=_rational, required=True)
    sp.add_argument("-p", type=int, required=True)
    common(sp)
    sp.set_defaults(fn=cmd_frac)

    sp = sub.add_parser("chi", help="additive character phase")
    sp.add_argument("-r", type=_rational, required=True)
    sp.add_argument("-p", type=int, default=None)
    common(sp)
    sp.set_defaults(fn=cmd_chi)

    sp = sub.add_parser("pair", help="pair a distribution with a test function")
    sp.add_argument("--dist", choices=["delta", "chi", "chi-quad", "pi-alpha"],
                    required=True)
    sp.add_argument("--phi", required=True,
                    help="JSON test function, or @file to read one")
    sp.add_argument("-a", type=_rational, default=None)
    sp.add_argument("-b", type=_rational, default=None)
    sp.add_argument("--alpha", type=_alpha, default=None)
    common(sp)
    sp.set_defaults(fn=cmd_pair)

    sp = sub.add_parser("gauss", help="local Gauss integral vs oracle")
    sp.add_argument("-p", type=int, default=None, help="prime; omit for the real place")
    sp.add_argument("-a", type=_rational, required=True)
    sp.add_argument("-b", type=_rational, default=F(0))
    sp.add_argument("--sphere-range", type=int, default=None,
                    help="outermost sphere index of the oracle plan")
    sp.add_argument("--refinement-cap", type=int, default=12,
                    help="extra refinement levels before flagging")
    common(sp, tol=1e-6)
    sp.set_defaults(fn=cmd_gauss)

    sp = sub.add_parser("product-check", help="adelic Gauss product formula")
    sp.add_argument("-a", type=_rational, required=True)
    sp.add_argument("-b", type=_rational, default=F(0))
    common(sp)
    sp.set_defaults(fn=cmd_product_check)

    sp = sub.add_parser("lambda-check", help="lambda product over all places")
    sp.add_argument("-a", type=_rational, required=True)
    common(sp, tol=1e-12)
    sp.set_defaults(fn=cmd_lambda_check)

    sp = sub.add_parser("mellin", help="Mellin transform of a test function")
    sp.add_argument("--phi", required=True)
    sp.add_argument("--alpha", type=_alpha, required=True)
    common(sp)
    sp.set_defaults(fn=cmd_mellin)

    sp = sub.add_parser("tate", help="Tate formula residual")
    sp.add_argument("--phi", required=True)
    sp.add_argument("--alpha", type=_alpha, required=True)
    common(sp, tol=1e-6)
    sp.set_defaults(fn=cmd_tate)

    sp = sub.add_parser("zeta-fe", help="Riemann functional equation residual")
    sp.add_argument("--alpha", type=_alpha, required=True)
    common(sp, tol=1e-10)
    sp.set_defaults(fn=cmd_zeta_fe)

    sp = sub.add_parser("oscillator-check", help="p-adic vacuum invariance")
    sp.add_argument("-p", type=int, required=True)
    sp.add_argument("--t", type=_rational, required=True)
    sp.add_argument("--precision", type=int, default=10)
    sp.add_argument("--energy", type=_rational, default=F(0))
    sp.add_argument("--samples", type=str, default=None,
                    help="comma-separated rational sample points")
    common(sp, tol=0.0)
    sp.set_defaults(fn=cmd_oscillator_check)

    sp = sub.add_parser("calibrate-lambda", help="re-derive the lambda table")
    sp.add_argument("-p", type=int, required=True)
    common(sp)
    sp.set_defaults(fn=cmd_calibrate_lambda)

    sp = sub.add_parser("suite", help="run the acceptance grid")
    sp.add_argument("--only", choices=sorted(ALL_CHECKS), default=None)
    common(sp)
    sp.set_defaults(fn=cmd_suite)

    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        reports = args.fn(args)
    except (ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    for rep in reports:
        emit(rep, timings=getattr(args, "timings", False))
    if not args.json:
        passed = sum(1 for r in reports if r.passed)
        print(f"# {passed}/{len(reports)} checks passed", file=sys.stderr)
    return 0 if all(r.passed for r in reports) else 1


if __name__ == "__main__":
    sys.exit(main())
