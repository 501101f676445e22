"""Command-line interface.

Exit codes: 0 success, 2 invalid input or configuration, 3 internal invariant
violation. All numbers that can exceed machine precision (primes, witness
coefficients, rationals) are printed as strings.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import __version__
from .classify import classify, find_negative_classes, scan, scan_csv, validate_triple
from .errors import ConfigurationError, DomainError, InvariantViolation
from .exact import isqrt, m_min, prime_list
from .gk import admissible_d, gk_criterion, gk_witness
from .lattice import enumerate_points, parse_triangle, support_from_wpp
from .linalg import deriv_orders, linear_system_empty, separating_polynomial

QUESTION_TRIANGLE = "0,0;10,40;36,27"
QUESTION_AREA2 = 1170


def _int_list(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--json", action="store_true", help="emit JSON instead of text")
    p.add_argument("--threads", type=int, default=os.cpu_count() or 1,
                   help="worker count (output order never depends on it)")
    p.add_argument("--seed", type=int, default=None,
                   help="append randomized primes after the fixed list")
    p.add_argument("--extra-primes", type=int, default=2,
                   help="how many randomized primes --seed adds (default 2)")
    return p


def _support_args(p: argparse.ArgumentParser):
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--wpp", type=_int_list, metavar="a,b,c,d",
                     help="degree-d monomials of P(a,b,c)")
    src.add_argument("--triangle", metavar="SPEC", help='e.g. "0,0;10,40;36,27"')
    p.add_argument("--dilate", type=int, default=1, help="dilation q for --triangle")
    p.add_argument("--m", type=int, required=True, help="multiplicity (degree bound m-1)")
    p.add_argument("--prime", type=int, default=None, help="listed prime to certify with")


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="toricinterp", parents=[common],
                                     description="Certified interpolation and classification tools for "
                                                 "blow-ups of toric surfaces at a general point.")
    parser.add_argument("--version", action="version", version=f"toricinterp {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common], help="verdict for a weight triple")
    p.add_argument("weights", type=int, nargs=3, metavar="W")
    p.add_argument("--search-depth", type=int, default=0)

    p = sub.add_parser("empty", parents=[common], help="is |dH - mE| empty?")
    _support_args(p)
    p.add_argument("--exact", action="store_true", help="skip the modular certificate")

    p = sub.add_parser("separate", parents=[common],
                       help="degree <= m-1 curve through all support points but one")
    _support_args(p)
    which = p.add_mutually_exclusive_group(required=True)
    which.add_argument("--point", type=_int_list, metavar="i,j")
    which.add_argument("--leftmost", action="store_true")

    p = sub.add_parser("gk-check", parents=[common], help="slope criterion and witness curves")
    p.add_argument("--triangle", required=True, metavar="SPEC")
    p.add_argument("--d", type=_int_list, default=None, metavar="LIST",
                   help="dilations to verify (default: two smallest admissible)")

    p = sub.add_parser("negcurve", parents=[common], help="search negative classes")
    p.add_argument("weights", type=int, nargs=3, metavar="W")
    p.add_argument("--max-d", type=int, required=True)

    p = sub.add_parser("question1170", parents=[common],
                       help="interpolation question for the (9,10,13) triangle")
    p.add_argument("--q", type=_int_list, required=True, metavar="Q[,Q...]")
    p.add_argument("--degree", choices=("m-1", "m", "both"), default="m-1",
                   help="degree bound of the separating curves relative to m_q")
    p.add_argument("--allow-large", action="store_true", help="permit q >= 4 (slow)")

    p = sub.add_parser("scan", parents=[common], help="classify all triples up to a weight sum")
    p.add_argument("--sum-max", type=int, required=True)
    p.add_argument("--search-depth", type=int, default=0)
    p.add_argument("--csv", type=Path, default=None, metavar="PATH")
    return parser


# ---------------------------------------------------------------------------


def _primes(args) -> list[int]:
    if args.seed is None:
        return prime_list()
    return prime_list(args.seed, args.extra_primes)


def _pick_prime(args, primes):
    if args.prime is None:
        return primes
    if args.prime not in primes:
        raise ConfigurationError(f"prime {args.prime} is not in the configured list")
    return [args.prime] + [p for p in primes if p != args.prime]


def _support(args):
    if args.wpp is not None:
        if len(args.wpp) != 4:
            raise DomainError("--wpp needs exactly a,b,c,d")
        return support_from_wpp(*args.wpp), {"wpp": args.wpp}
    t = parse_triangle(args.triangle)
    return enumerate_points(t, args.dilate), {"triangle": str(t), "dilate": args.dilate}


def _cmd_classify(args, primes):
    t = validate_triple(*args.weights)
    v = classify(t, args.search_depth, primes, args.threads)
    return v.to_dict()


def _cmd_empty(args, primes):
    sup, source = _support(args)
    primes = _pick_prime(args, primes)
    if args.exact:
        from .linalg import build_B, rank

        cert = rank(build_B(sup, args.m), mode="exact")
        empty = cert.full_row_rank
    else:
        res = linear_system_empty(sup, args.m, primes)
        cert, empty = res.certificate, res.empty
    return {**source, "m": args.m, "empty": empty, "certificate": cert.to_dict()}


def _poly_terms(coeffs, m):
    return {f"x^{a}*y^{b}": str(c) for (a, b), c in zip(deriv_orders(m), coeffs) if c}


def _cmd_separate(args, primes):
    sup, source = _support(args)
    primes = _pick_prime(args, primes)
    idx = 0 if args.leftmost else sup.index(args.point)
    coeffs = separating_polynomial(sup, args.m, idx, prime=primes[0])
    out = {**source, "m": args.m, "degree_bound": args.m - 1, "point": list(sup[idx]),
           "support_size": len(sup), "separable": coeffs is not None}
    if coeffs is not None:
        out["polynomial"] = _poly_terms(coeffs, args.m)
        out["verified"] = "exact"
    return out


def _cmd_gk_check(args, primes):
    t = parse_triangle(args.triangle)
    report = gk_criterion(t)
    out = {"triangle": str(t), "report": report.to_dict(), "witnesses": []}
    if not report.criterion_holds:
        return out
    ds = args.d if args.d else admissible_d(t, 2)
    for d in ds:
        out["witnesses"].append(gk_witness(t, d).to_dict())
    return out


def _cmd_negcurve(args, primes):
    t = validate_triple(*args.weights)
    res = find_negative_classes(t, args.max_d, primes, args.threads)
    return {
        "triple": list(t),
        "max_d": args.max_d,
        "negative_classes": [h.to_dict() for h in res.hits],
        "full_rank_certificates": [{"d": d, "prime": p} for d, p in res.certificates],
    }


def _cmd_question(args, primes):
    tri = parse_triangle(QUESTION_TRIANGLE)
    runs = []
    for q in args.q:
        if q < 1:
            raise DomainError("q must be >= 1")
        if q >= 4 and not args.allow_large:
            raise DomainError(f"q = {q} needs --allow-large")
        sup = enumerate_points(tri, q)
        mq = isqrt(QUESTION_AREA2 * q * q) + 1
        if mq != m_min(9, 10, 13, QUESTION_AREA2 * q):
            raise InvariantViolation("m_q disagrees with m_min(9,10,13,1170q)")
        offsets = {"m-1": [0], "m": [1], "both": [0, 1]}[args.degree]
        for off in offsets:
            m = mq + off
            res = linear_system_empty(sup, m, primes)
            runs.append({
                "q": q, "m_q": mq, "degree_bound": m - 1, "multiplicity": m,
                "points": len(sup), "empty": res.empty,
                "every_point_separable": res.empty,
                "certificate": res.certificate.to_dict(),
            })
    return {"triangle": QUESTION_TRIANGLE, "runs": runs}


def _cmd_scan(args, primes):
    verdicts = scan(args.sum_max, args.search_depth, primes, args.threads)
    text = scan_csv(verdicts)
    counts = {}
    for v in verdicts:
        counts[v.status] = counts.get(v.status, 0) + 1
    out = {"sum_max": args.sum_max, "search_depth": args.search_depth,
           "triples": len(verdicts), "counts": dict(sorted(counts.items()))}
    if args.csv is not None:
        args.csv.write_text(text)
        out["csv"] = str(args.csv)
    else:
        out["csv_text"] = text
    return out


COMMANDS = {
    "classify": _cmd_classify,
    "empty": _cmd_empty,
    "separate": _cmd_separate,
    "gk-check": _cmd_gk_check,
    "negcurve": _cmd_negcurve,
    "question1170": _cmd_question,
    "scan": _cmd_scan,
}


def _render_text(value, indent=0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(value, dict):
        for k, v in value.items():
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.extend(_render_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
    elif isinstance(value, list):
        for item in value:
            if isinstance(item, (dict, list)):
                lines.append(f"{pad}-")
                lines.extend(_render_text(item, indent + 1))
            else:
                lines.append(f"{pad}- {_scalar(item)}")
    else:
        lines.append(f"{pad}{_scalar(value)}")
    return lines


def _scalar(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return "null"
    if v == [] or v == {}:
        return "[]" if v == [] else "{}"
    return str(v)


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        primes = _primes(args)
        result = COMMANDS[args.command](args, primes)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InvariantViolation as exc:
        print(f"internal invariant violated: {exc}", file=sys.stderr)
        return 3
    tool = {"name": "toricinterp", "version": __version__, "primes": [str(p) for p in primes]}
    if args.json:
        stdout.write(json.dumps({"tool": tool, "command": args.command, "result": result},
                                indent=2, sort_keys=True) + "\n")
    else:
        csv_text = result.pop("csv_text", None) if isinstance(result, dict) else None
        lines = [f"# toricinterp {__version__} ({args.command})",
                 "# primes: " + ", ".join(tool["primes"])]
        lines.extend(_render_text(result))
        stdout.write("\n".join(lines) + "\n")
        if csv_text:
            stdout.write(csv_text)
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
