"""
Command Line Interface for certified Stirling bounds
Stirling 界证明工具的命令行界面
"""

import argparse
import json
import sys
import time
from math import log2
from pathlib import Path
from typing import Any, Dict, List, Optional

# Add project root to path so the module also runs as a plain script
sys.path.append(str(Path(__file__).parent.parent.parent))

from src.catalog import get_entry, reproduce_paper, resolve_bound
from src.core.certify import certify_bound
from src.core.config import EngineConfig
from src.core.errors import CertificationError, RefutationError, StageUndecidableError, StirlingError, UndecidableError
from src.core.exact import rat_to_json
from src.core.expr import format_expr, parse_expr, parse_ratfunc
from src.core.precision import Interval, bound_enclosure, factorial, leading_digits_agreement, strict_compare
from src.core.series import correction_coefficients, optimal_tail_constant, stirling_coeff
from src.core.verdict import Direction, Verdict
from src.core.wallis import ratio_limit_table, rows_to_csv, wallis_integral, wallis_monotone_check, \
    wallis_sandwich_check

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_REFUTED = 2
EXIT_UNDECIDABLE = 3
EXIT_INTERNAL = 4

DEFAULT_DIGITS = 30
DEFAULT_RATIO_TABLE = (1, 10, 100, 1000)


class _Parser(argparse.ArgumentParser):
    """argparse exits with status 2 on usage errors; usage errors here exit with 1"""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _emit(args, payload: Dict[str, Any], text: str) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text)


def _say(args, message: str) -> None:
    if args.verbose:
        print(message, file=sys.stderr)


def _digits_prec(digits: int, n: int) -> int:
    """Working bits so that exp of an enclosure of size ~ n ln n keeps `digits` significant digits"""
    return int(digits * log2(10)) + 2 * max(n, 2).bit_length() + 32


def _catalog_or_expr(text: str, direction, r: Optional[int] = None, claim_from: int = 1, need_r: bool = False):
    """Catalog names carry their own direction; expressions take the one given"""
    try:
        return get_entry(text).spec
    except StirlingError:
        pass
    if direction is None:
        raise ValueError("--direction is required for a free-form --an expression")
    if need_r and (r is None or r < 2):
        raise ValueError("--r >= 2 is required to certify a free-form --an expression")
    return resolve_bound(text, direction, r, claim_from)


# Subcommands

def cmd_certify(args, config: EngineConfig) -> int:
    spec = _catalog_or_expr(args.an, args.direction, args.r, args.from_n, need_r=True)
    _say(args, f"a(n) = {spec.a.to_text()}")

    cert = certify_bound(spec, config, verbose=args.verbose)
    if args.out:
        Path(args.out).write_text(cert.to_json() + "\n", encoding="utf-8")
    text = "\n".join([
        f"bound      {spec.name} ({spec.direction.value})",
        f"truncation {spec.truncation} terms (r = {spec.r})",
        f"sign claim {cert.claim.p.to_text()} {cert.claim.required_sign.value}",
        f"threshold  N* = {cert.threshold}",
        f"base cases {len(cert.base_cases)} verified",
        f"certified for every n >= {cert.valid_from}",
    ])
    _emit(args, cert.to_dict(), text)
    return EXIT_OK


def cmd_eval(args, config: EngineConfig) -> int:
    spec = _catalog_or_expr(args.an, args.direction)
    if args.n < spec.claim_from:
        raise ValueError(f"{spec.name} is only valid for n >= {spec.claim_from}")
    prec = _digits_prec(args.digits, args.n)
    value = bound_enclosure(args.n, spec.a, prec)
    result = strict_compare(args.n, spec.a, spec.direction, config.prec_ceiling, config.start_prec, config.escalation)
    payload = {
        "n": str(args.n),
        "a": spec.a.to_text(),
        "bound_lo": value.lo_str(args.digits),
        "bound_hi": value.hi_str(args.digits),
        "direction": spec.direction.value,
        "verdict": result.verdict.value,
        "precision_bits": str(result.prec),
    }
    text = "\n".join([
        f"bound({args.n}) in {value.to_str(args.digits)}",
        f"{spec.direction.value} bound {result.verdict.value} at n = {args.n} ({result.prec} bits)",
    ])
    _emit(args, payload, text)
    return EXIT_OK


def cmd_sandwich(args, config: EngineConfig) -> int:
    lower = resolve_bound(args.lower, Direction.LOWER)
    upper = resolve_bound(args.upper, Direction.UPPER)
    for spec in (lower, upper):
        if args.n < spec.claim_from:
            raise ValueError(f"{spec.name} is only valid for n >= {spec.claim_from}")
    n = args.n
    prec = _digits_prec(args.digits, n)
    low = bound_enclosure(n, lower.a, prec)
    high = bound_enclosure(n, upper.a, prec)
    exact = factorial(n)
    verdicts = [strict_compare(n, s.a, s.direction, config.prec_ceiling, config.start_prec, config.escalation).verdict
                for s in (lower, upper)]
    contained = all(v is Verdict.HOLDS for v in verdicts)
    relative_gap = (high - low) / Interval.from_int(exact, prec)
    pinned = leading_digits_agreement(low, high, args.digits)
    exact_text = str(exact)
    payload = {
        "n": str(n),
        "lower": lower.name,
        "upper": upper.name,
        "lower_enclosure": [low.lo_str(args.digits), low.hi_str(args.digits)],
        "upper_enclosure": [high.lo_str(args.digits), high.hi_str(args.digits)],
        "factorial_digits": str(len(exact_text)),
        "factorial_leading": exact_text[:args.digits],
        "contains_factorial": contained,
        "relative_gap_hi": relative_gap.hi_str(6),
        "digits_pinned": str(pinned),
    }
    if len(exact_text) <= 200:
        payload["factorial"] = exact_text
    shown = exact_text if len(exact_text) <= 200 else f"{exact_text[:args.digits]}... ({len(exact_text)} digits)"
    text = "\n".join([
        f"lower {lower.name:<16} {low.to_str(args.digits)}",
        f"n!                     {shown}",
        f"upper {upper.name:<16} {high.to_str(args.digits)}",
        f"contains n!: {'yes' if contained else 'NO'}",
        f"relative gap <= {relative_gap.hi_str(6)}",
        f"leading digits pinned by the sandwich: {pinned}",
    ])
    _emit(args, payload, text)
    return EXIT_OK if contained else EXIT_REFUTED


def cmd_reproduce(args, config: EngineConfig) -> int:
    names = [s.strip() for s in args.names.split(",")] if args.names else None
    report = reproduce_paper(config, verbose=args.verbose, names=names)
    if args.format == "json":
        print(report.to_json())
    else:
        print(report.to_text())
    if report.ok:
        return EXIT_OK
    if any(row.counterexample is not None for row in report.entries):
        return EXIT_REFUTED
    return EXIT_UNDECIDABLE


def _parse_ns(text: Optional[str]) -> List[int]:
    if not text:
        return list(DEFAULT_RATIO_TABLE)
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise ValueError(f"Invalid --table list: {text!r}")


def cmd_wallis(args, config: EngineConfig) -> int:
    if args.max_n < 1:
        raise ValueError("--max-n must be >= 1")
    rows = []
    for n in range(1, args.max_n + 1):
        rows.append({
            "n": str(n),
            "integral": str(wallis_integral(n)),
            "monotone": wallis_monotone_check(n, config.prec_ceiling).value,
            "sandwich": wallis_sandwich_check(n, config.start_prec, config.prec_ceiling).value,
        })
    table = ratio_limit_table(_parse_ns(args.table), prec_ceiling=config.prec_ceiling) \
        if (args.table or args.csv) else []

    if args.csv:
        print(rows_to_csv(table, args.digits), end="")
        return EXIT_OK
    payload = {"rows": rows, "ratio_table": [row.to_dict(args.digits) for row in table]}
    lines = [f"{r['n']:>6}  I_n = {r['integral']:<24}  monotone {r['monotone']}  sandwich {r['sandwich']}" for r in rows]
    for row in table:
        lines.append(f"ratio n={row.n}: {row.ratio.to_str(args.digits)}  gap {row.gap.to_str(8)}")
    _emit(args, payload, "\n".join(lines))
    held = all(r["monotone"] == "holds" and r["sandwich"] == "holds" for r in rows)
    return EXIT_OK if held else EXIT_REFUTED


def cmd_series(args, config: EngineConfig) -> int:
    if args.upto < 2:
        raise ValueError("--upto must be >= 2")
    coefficients = {k: stirling_coeff(k) for k in range(2, args.upto + 1)}
    payload: Dict[str, Any] = {"coefficients": {str(k): rat_to_json(c) for k, c in coefficients.items()}}
    lines = [str(c) for c in coefficients.values()]
    if args.corrections:
        lam = correction_coefficients(args.upto)
        payload["corrections"] = {str(k): rat_to_json(c) for k, c in sorted(lam.items()) if k <= args.upto}
        lines += [f"lambda_{k} = {c}" for k, c in sorted(lam.items()) if k <= args.upto]
    if args.tail:
        if args.order is None:
            raise ValueError("--tail needs --order")
        c = optimal_tail_constant(args.tail, args.order, max(config.series_order, args.order))
        payload["tail"] = {"family": args.tail, "order": str(args.order), "c": rat_to_json(c)}
        lines.append(f"c* = {c}")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_parse(args, config: EngineConfig) -> int:
    ast = parse_expr(args.expr)
    f = parse_ratfunc(args.expr)
    payload = {"expr": format_expr(ast), "num": f.num.to_text(), "den": f.den.to_text()}
    _emit(args, payload, f"{format_expr(ast)}\n= {f.to_text()}")
    return EXIT_OK


COMMANDS = {
    "certify": cmd_certify,
    "eval": cmd_eval,
    "sandwich": cmd_sandwich,
    "reproduce": cmd_reproduce,
    "wallis": cmd_wallis,
    "series": cmd_series,
    "parse": cmd_parse,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json"], default="text", help="Output format (default: text)")
    common.add_argument("--json", action="store_true", help="Shorthand for --format json")
    common.add_argument("--prec-ceiling", type=int, help="Interval precision ceiling in bits (>= 64)")
    common.add_argument("--workers", type=int, help="Parallel base-case / reproduction workers")
    common.add_argument("--verbose", "-v", action="store_true", help="Narrate progress on stderr")
    common.add_argument("--timing", action="store_true", help="Report wall-clock time on stderr")

    parser = _Parser(
        prog="stirling-bounds",
        description="Certify Stirling-type bounds for n! with exact arithmetic and interval checks",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  # Certify the 103-family upper bound
  stirling-bounds certify --an "1/(12n)-1/(360n^3+103n)" --r 4 --direction upper --from 1

  # Two-sided sandwich of 100!
  stirling-bounds sandwich --n 100 --lower c102_lower --upper c103_upper

  # Reproduce every catalog bound
  stirling-bounds reproduce --format json

  # Series coefficients and a tail constant
  stirling-bounds series --upto 12
  stirling-bounds series --upto 8 --tail "1/(12n)-1/(360n^3+c*n)" --order 5
        """,
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("certify", parents=[common], help="Certify a bound and print its certificate")
    p.add_argument("--an", required=True, help="Correction term a(n) or a catalog name")
    p.add_argument("--r", type=int, help="Truncation parameter r (>= 2)")
    p.add_argument("--direction", choices=["lower", "upper"], help="Bound direction")
    p.add_argument("--from", dest="from_n", type=int, default=1, help="Claimed validity start (default: 1)")
    p.add_argument("--out", help="Also write the certificate JSON to this file")

    p = sub.add_parser("eval", parents=[common], help="Enclose the bound value at one n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--an", required=True, help="Correction term a(n) or a catalog name")
    p.add_argument("--direction", choices=["lower", "upper"], default="lower")
    p.add_argument("--digits", type=int, default=DEFAULT_DIGITS)

    p = sub.add_parser("sandwich", parents=[common], help="Two-sided enclosure of n!")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--lower", required=True, help="Lower bound: catalog name or a(n)")
    p.add_argument("--upper", required=True, help="Upper bound: catalog name or a(n)")
    p.add_argument("--digits", type=int, default=DEFAULT_DIGITS)

    p = sub.add_parser("reproduce", parents=[common], help="Derive and certify every catalog bound")
    p.add_argument("--names", help="Comma-separated subset of catalog names")
    p.add_argument("--n-max", type=int, help="Range for interval-only bounds (default: 1000)")

    p = sub.add_parser("wallis", parents=[common], help="Wallis integrals and the sqrt(pi n) sandwich")
    p.add_argument("--max-n", type=int, default=10)
    p.add_argument("--table", help="Comma-separated n values for the n! e^n / n^(n+1/2) table")
    p.add_argument("--csv", action="store_true", help="Print the ratio table as CSV")
    p.add_argument("--digits", type=int, default=DEFAULT_DIGITS)

    p = sub.add_parser("series", parents=[common], help="Exact series coefficients")
    p.add_argument("--upto", type=int, required=True)
    p.add_argument("--corrections", action="store_true", help="Also print the correction coefficients lambda_k")
    p.add_argument("--tail", help="Family template containing the unknown constant c")
    p.add_argument("--order", type=int, help="Order at which c is matched")

    p = sub.add_parser("parse", parents=[common], help="Parse and normalize an a(n) expression")
    p.add_argument("expr")
    return parser


def _error_payload(e: Exception) -> Dict[str, Any]:
    payload: Dict[str, Any] = {"error": str(e), "type": type(e).__name__}
    if isinstance(e, CertificationError):
        payload["stage"] = e.stage
    if isinstance(e, RefutationError):
        payload["counterexample"] = str(e.counterexample)
    if isinstance(e, (UndecidableError, StageUndecidableError)) and e.n is not None:
        payload["n"] = str(e.n)
    return payload


def _exit_code(e: Exception) -> int:
    if isinstance(e, RefutationError):
        return EXIT_REFUTED
    if isinstance(e, (CertificationError, UndecidableError)):
        return EXIT_UNDECIDABLE
    if isinstance(e, ValueError):
        return EXIT_USAGE
    return EXIT_INTERNAL


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.json:
        args.format = "json"

    started = time.perf_counter()
    try:
        config = EngineConfig.from_env().with_overrides(
            prec_ceiling=args.prec_ceiling,
            workers=args.workers,
            n_max=getattr(args, "n_max", None),
        )
        code = COMMANDS[args.command](args, config)
    except Exception as e:
        if args.format == "json":
            print(json.dumps(_error_payload(e), indent=2, sort_keys=True))
        print(f"Error: {e}", file=sys.stderr)
        code = _exit_code(e)
    if args.timing:
        print(f"elapsed {time.perf_counter() - started:.3f}s", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
