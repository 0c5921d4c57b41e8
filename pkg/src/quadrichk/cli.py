"""Command-line interface for the quadric Hilbert-Kunz toolkit.

Subcommands: coeffs, decompose, density, ehk, fthreshold, verify.
All rationals are emitted exactly as numerator/denominator pairs, with a
decimal rendering at the requested precision.  Exit codes: 0 success,
1 verification mismatch, 2 usage error (argparse), 3 out-of-scope input,
4 resource ceiling exceeded.
"""

from __future__ import annotations

import argparse
import decimal
import json
import sys
import time
from fractions import Fraction

from .density import (
    ehk,
    ehk_infinity,
    f_infinity,
    f_p,
    f_threshold,
    verify_wy,
)
from .exact import sec_tan_coefficient
from .frobenius import (
    OutOfScopeError,
    QuadricContext,
    decompose,
    graded_length,
    total_colength,
)
from .oracle import (
    CeilingExceededError,
    max_block_columns,
    oracle_graded_length,
    oracle_total_colength,
    _resolve_ceiling,
)

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_OUT_OF_SCOPE = 3
EXIT_CEILING = 4


def _decimal_str(x: Fraction, precision: int) -> str:
    with decimal.localcontext() as ctx:
        ctx.prec = precision
        return str(decimal.Decimal(x.numerator) / decimal.Decimal(x.denominator))


def _rat(x, precision: int) -> dict:
    x = Fraction(x)
    return {
        "num": x.numerator,
        "den": x.denominator,
        "decimal": _decimal_str(x, precision),
    }


def _parse_rational(text: str) -> Fraction:
    try:
        if "/" in text:
            return Fraction(text)
        return Fraction(decimal.Decimal(text))
    except (ValueError, decimal.InvalidOperation) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def _emit(payload: dict, args) -> None:
    if not args.no_timing:
        payload["elapsed_seconds"] = round(time.time() - args._t0, 3)
    json.dump(payload, sys.stdout, indent=2)
    sys.stdout.write("\n")


def cmd_coeffs(args) -> int:
    rows = [
        {"d": d, **_rat(sec_tan_coefficient(d), args.precision)}
        for d in range(1, args.max_d + 1)
    ]
    _emit({"coefficients": rows}, args)
    return EXIT_OK


def cmd_decompose(args) -> int:
    ctx = QuadricContext(args.n, args.p)
    dec = decompose(ctx, args.s, args.a, args.source)
    payload = {
        "n": args.n,
        "p": args.p,
        "s": args.s,
        "q": dec.q,
        "a": dec.a,
        "source": dec.source,
        "exact": dec.exact,
        "nu": {str(t): c for t, c in sorted(dec.nu.items(), reverse=True)},
        "mu": {str(t): c for t, c in sorted(dec.mu.items(), reverse=True)},
    }
    if not dec.exact:
        payload["nu_brackets"] = {
            str(t): [b.lo, b.hi] for t, b in sorted(dec.nu_bracket.items(), reverse=True)
        }
        payload["mu_brackets"] = {
            str(t): [b.lo, b.hi] for t, b in sorted(dec.mu_bracket.items(), reverse=True)
        }
    _emit(payload, args)
    return EXIT_OK


def _density_profile(args):
    if args.infinity:
        return f_infinity(args.n)
    if args.p is None:
        raise OutOfScopeError("density requires --p or --infinity")
    return f_p(args.n, args.p)


def cmd_density(args) -> int:
    profile = _density_profile(args)
    form = profile.closed_form
    out = sys.stdout
    if args.breakpoints:
        out.write("piece_index,lo_num,lo_den,hi_num,hi_den,coefficients\n")
        for i, poly in enumerate(form.pieces):
            lo, hi = form.breakpoints[i], form.breakpoints[i + 1]
            coeffs = ";".join(
                f"{c.numerator}/{c.denominator}" for c in poly.coeffs
            )
            out.write(
                f"{i},{lo.numerator},{lo.denominator},"
                f"{hi.numerator},{hi.denominator},{coeffs}\n"
            )
        return EXIT_OK
    lo = args.start if args.start is not None else Fraction(0)
    hi = args.stop if args.stop is not None else Fraction(profile.n)
    if args.samples < 2 or hi <= lo:
        raise OutOfScopeError("need samples >= 2 and stop > start")
    out.write("x_num,x_den,f_num,f_den,kind,piece_index\n")
    for i in range(args.samples):
        x = lo + (hi - lo) * Fraction(i, args.samples - 1)
        val = profile.value(x, depth=args.depth)
        idx = form.piece_at(x) if lo <= x < profile.n and x >= 0 else -1
        if val.exact:
            v = val.value
            out.write(
                f"{x.numerator},{x.denominator},"
                f"{v.numerator},{v.denominator},exact,{idx}\n"
            )
        else:
            for kind, v in (("bracket_lo", val.lo), ("bracket_hi", val.hi)):
                out.write(
                    f"{x.numerator},{x.denominator},"
                    f"{v.numerator},{v.denominator},{kind},{idx}\n"
                )
    return EXIT_OK


def cmd_ehk(args) -> int:
    if args.infinity:
        value = ehk_infinity(args.n)
        payload = {
            "n": args.n,
            "p": None,
            "method": "exact",
            "lower": _rat(value, args.precision),
            "upper": _rat(value, args.precision),
        }
    else:
        if args.p is None:
            raise OutOfScopeError("ehk requires --p or --infinity")
        bracket = ehk(args.n, args.p, args.epsilon)
        payload = {
            "n": args.n,
            "p": args.p,
            "method": bracket.method,
            "depth": bracket.depth,
            "lower": _rat(bracket.lower, args.precision),
            "upper": _rat(bracket.upper, args.precision),
            "width": _rat(bracket.width, args.precision),
        }
    _emit(payload, args)
    return EXIT_OK


def cmd_fthreshold(args) -> int:
    value = f_threshold(args.n, args.p)
    _emit(
        {"n": args.n, "p": args.p, "f_threshold": _rat(value, args.precision)},
        args,
    )
    return EXIT_OK


def cmd_verify(args) -> int:
    ctx = QuadricContext(args.n, args.p)
    ceiling = _resolve_ceiling(args.ceiling)
    levels = []
    any_skip = False
    any_mismatch = False
    for s in range(1, args.max_s + 1):
        q = ctx.q(s)
        predicted = max_block_columns(args.n, args.p, s)
        if predicted > ceiling:
            levels.append(
                {
                    "s": s,
                    "status": "skipped",
                    "reason": f"largest rank block {predicted} exceeds ceiling {ceiling}",
                }
            )
            any_skip = True
            continue
        mismatches = []
        degrees = 0
        try:
            for d in range(0, args.n * q):
                expected = graded_length(ctx, s, d)
                got = oracle_graded_length(args.n, args.p, s, d, ceiling=ceiling)
                degrees += 1
                if not expected.contains(got):
                    mismatches.append(
                        {
                            "d": d,
                            "oracle": got,
                            "structural_lo": expected.lo,
                            "structural_hi": expected.hi,
                        }
                    )
            total = total_colength(ctx, s)
            oracle_total = oracle_total_colength(args.n, args.p, s, ceiling=ceiling)
            if not total.contains(oracle_total):
                mismatches.append(
                    {
                        "d": "total",
                        "oracle": oracle_total,
                        "structural_lo": total.lo,
                        "structural_hi": total.hi,
                    }
                )
            level = {
                "s": s,
                "status": "mismatch" if mismatches else "ok",
                "degrees_checked": degrees,
                "exact_degrees": sum(
                    1
                    for d in range(0, args.n * q)
                    if graded_length(ctx, s, d).is_exact
                ),
                "structural_total": [total.lo, total.hi],
                "oracle_total": oracle_total,
                "mismatches": mismatches,
            }
        except CeilingExceededError as exc:
            levels.append({"s": s, "status": "skipped", "reason": str(exc)})
            any_skip = True
            continue
        any_mismatch = any_mismatch or bool(mismatches)
        levels.append(level)
    payload = {"n": args.n, "p": args.p, "max_s": args.max_s, "levels": levels}
    if args.wy and ctx.closed_form_valid:
        report = verify_wy(args.n, args.p)
        payload["wy"] = {
            k: (str(v) if isinstance(v, Fraction) else v) for k, v in report.items()
        }
        any_mismatch = any_mismatch or not report["all_pass"]
    _emit(payload, args)
    if any_mismatch:
        return EXIT_MISMATCH
    if any_skip:
        return EXIT_CEILING
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quadrichk",
        description=(
            "Exact Frobenius pushforward decompositions, Hilbert-Kunz density "
            "functions, multiplicities and F-thresholds for quadric rings."
        ),
    )
    parser.add_argument(
        "--precision",
        type=int,
        default=12,
        help="decimal digits in rendered rationals (default 12)",
    )
    parser.add_argument(
        "--no-timing",
        action="store_true",
        help="omit timing fields for byte-reproducible output",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("coeffs", help="secant-tangent coefficients m_d = A_d/d!")
    c.add_argument("--max-d", type=int, required=True)
    c.set_defaults(func=cmd_coeffs)

    c = sub.add_parser("decompose", help="decompose F^s_* O(a) or F^s_* S(a)")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--p", type=int, required=True)
    c.add_argument("--s", type=int, required=True)
    c.add_argument("--a", type=int, required=True)
    c.add_argument("--source", choices=("O", "S"), default="O")
    c.set_defaults(func=cmd_decompose)

    c = sub.add_parser("density", help="sample or dump the HK density function")
    c.add_argument("--n", type=int, required=True)
    group = c.add_mutually_exclusive_group(required=True)
    group.add_argument("--p", type=int)
    group.add_argument("--infty", dest="infinity", action="store_true")
    c.add_argument("--from", dest="start", type=_parse_rational)
    c.add_argument("--to", dest="stop", type=_parse_rational)
    c.add_argument("--samples", type=int, default=65)
    c.add_argument("--depth", type=int, default=24)
    c.add_argument(
        "--breakpoints",
        action="store_true",
        help="emit exact breakpoints and per-piece coefficient vectors instead",
    )
    c.set_defaults(func=cmd_density)

    c = sub.add_parser("ehk", help="Hilbert-Kunz multiplicity (certified bracket)")
    c.add_argument("--n", type=int, required=True)
    group = c.add_mutually_exclusive_group(required=True)
    group.add_argument("--p", type=int)
    group.add_argument("--infty", dest="infinity", action="store_true")
    c.add_argument("--epsilon", type=_parse_rational, default=Fraction(1, 10**6))
    c.set_defaults(func=cmd_ehk)

    c = sub.add_parser("fthreshold", help="F-threshold of the irrelevant ideal")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--p", type=int, required=True)
    c.set_defaults(func=cmd_fthreshold)

    c = sub.add_parser(
        "verify",
        help="cross-check structural colengths against the GF(p) rank oracle",
    )
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--p", type=int, required=True)
    c.add_argument("--max-s", type=int, default=1)
    c.add_argument("--ceiling", type=int, default=None)
    c.add_argument(
        "--wy",
        action="store_true",
        help="also run the density/multiplicity bound checks",
    )
    c.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args._t0 = time.time()
    try:
        return args.func(args)
    except CeilingExceededError as exc:
        print(f"resource ceiling exceeded: {exc}", file=sys.stderr)
        return EXIT_CEILING
    except (OutOfScopeError, ValueError) as exc:
        print(f"out of scope: {exc}", file=sys.stderr)
        return EXIT_OUT_OF_SCOPE


if __name__ == "__main__":
    sys.exit(main())
