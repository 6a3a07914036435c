"""Command-line front end: ``cubicgauss <subcommand> ...``.

Exit status: 0 on success, 1 when a computed value disagrees with its
cross-check (or a verify suite fails), 2 on bad arguments.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import charsum as cs
from . import verifier
from .gf2field import build_field, parse_hex, to_hex

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2


def _hex(text: str) -> int:
    try:
        return parse_hex(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a hex bitmask: {text!r}") from None


def _emit(doc: dict, fmt: str) -> None:
    if fmt == "json":
        sys.stdout.write(json.dumps(doc, indent=2) + "\n")
    elif fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(doc.keys())
        writer.writerow(json.dumps(v) if isinstance(v, (dict, list)) else v for v in doc.values())
        sys.stdout.write(buf.getvalue())
    else:
        for key, value in doc.items():
            if isinstance(value, (dict, list)):
                value = json.dumps(value)
            sys.stdout.write(f"{key}: {value}\n")


def _workers(args) -> int:
    return args.workers if args.workers is not None else cs.default_workers()


def _spec(args) -> cs.CharacterSpec:
    return cs.character_spec(build_field(args.degree, args.modulus), args.order)


def cmd_field(args) -> int:
    _emit(build_field(args.degree, args.modulus).describe(), args.format)
    return EXIT_OK


def cmd_char(args) -> int:
    spec = _spec(args)
    k = cs.character(spec, args.x)
    _emit({"degree": args.degree, "order": spec.order, "trivial": spec.trivial, "x": to_hex(args.x),
           "exponent": k, "value": cs.value_of_exponent(spec, k).to_json()}, args.format)
    return EXIT_OK


def cmd_gauss(args) -> int:
    spec = _spec(args)
    method = args.method or "brute_force"
    rec = cs.gauss_sum_by_method(spec, args.beta, method, _workers(args))
    doc = rec.to_json()
    status = EXIT_OK
    if not args.no_check:
        if spec.order == 3:
            ref = cs.gauss_sum_by_method(spec, args.beta, "closed_form")
            doc["cross_check"] = {"method": "closed_form", "value": ref.value.to_json()}
        elif method != "brute_force":
            ref = cs.gauss_sum(spec, args.beta, _workers(args))
            doc["cross_check"] = {"method": "brute_force", "value": ref.value.to_json()}
        else:
            ref = None
        if ref is not None:
            doc["cross_check"]["agrees"] = ref.value == rec.value
            if ref.value != rec.value:
                print(f"cross-check mismatch: {rec.value} vs {ref.value}", file=sys.stderr)
                status = EXIT_FAIL
    _emit(doc, args.format)
    return status


def cmd_kummer(args) -> int:
    spec = _spec(args)
    value = cs.kummer_sum(spec, args.beta, _workers(args))
    _emit({"degree": args.degree, "order": spec.order, "beta": to_hex(args.beta), "value": value.to_json()},
          args.format)
    return EXIT_OK


def cmd_asum(args) -> int:
    spec = _spec(args)
    if args.degree % 2:
        raise ValueError("asum needs an even degree")
    m = args.degree // 2
    alpha = args.alpha if args.alpha is not None else int(cs.relative_trace_one(spec.ctx, m)[0])
    value = cs.a_sum(spec, alpha)
    _emit({"degree": args.degree, "m": m, "alpha": to_hex(alpha), "value": value.to_json()}, args.format)
    return EXIT_OK


def cmd_mcounts(args) -> int:
    spec = cs.character_spec(build_field(args.degree, args.modulus), 3)
    m0, m1, m2 = cs.m_counts(spec)
    m = args.degree // 2
    doc = {"degree": args.degree, "m": m, "M0": m0, "M1": m1, "M2": m2, "M0_minus_M1": m0 - m1}
    if m % 2 == 0:
        doc["integrality_sign"] = cs.a_sum_from_integrality(m)
    _emit(doc, args.format)
    return EXIT_OK


def cmd_verify(args) -> int:
    lo, hi = verifier.parse_range(args.range)
    sampling = verifier.Sampling(args.sampling, args.samples, args.seed)
    report = verifier.run_suite(verifier.parse_claims(args.claims), (lo, hi), sampling, _workers(args))
    sys.stdout.write(verifier.render_report(report, args.format).decode())
    return EXIT_OK if report.passed else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cubicgauss", description="Exact Gauss sums over GF(2^s).")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "text"), default="text")
    common.add_argument("--workers", type=int, default=None,
                        help=f"worker threads (default: ${cs.WORKERS_ENV} or CPU count)")
    fieldopts = argparse.ArgumentParser(add_help=False)
    fieldopts.add_argument("--degree", type=int, required=True)
    fieldopts.add_argument("--modulus", type=_hex, default=None, help="hex bitmask, e.g. 0x13")
    charopts = argparse.ArgumentParser(add_help=False)
    charopts.add_argument("--order", type=int, default=3, help="prime character order (default 3)")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("field", parents=[common, fieldopts], help="describe GF(2^s)")
    p.set_defaults(func=cmd_field)

    p = sub.add_parser("char", parents=[common, fieldopts, charopts], help="evaluate a character")
    p.add_argument("--x", type=_hex, required=True)
    p.set_defaults(func=cmd_char)

    p = sub.add_parser("gauss", parents=[common, fieldopts, charopts], help="Gauss sum G(beta)")
    p.add_argument("--beta", type=_hex, default=1)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--method", choices=cs.METHODS)
    group.add_argument("--brute-force", dest="method", action="store_const", const="brute_force")
    group.add_argument("--trace-class", dest="method", action="store_const", const="trace_class")
    group.add_argument("--twist", dest="method", action="store_const", const="twist")
    group.add_argument("--closed-form", dest="method", action="store_const", const="closed_form")
    p.add_argument("--no-check", action="store_true", help="skip the cross-check")
    p.set_defaults(func=cmd_gauss)

    p = sub.add_parser("kummer", parents=[common, fieldopts, charopts], help="sum chi(x) conj(chi(x+beta))")
    p.add_argument("--beta", type=_hex, default=1)
    p.set_defaults(func=cmd_kummer)

    p = sub.add_parser("asum", parents=[common, fieldopts, charopts], help="A(alpha) over the half-degree subfield")
    p.add_argument("--alpha", type=_hex, default=None)
    p.set_defaults(func=cmd_asum)

    p = sub.add_parser("mcounts", parents=[common, fieldopts], help="cubic classes of relative-trace-1 elements")
    p.set_defaults(func=cmd_mcounts)

    p = sub.add_parser("verify", parents=[common], help="run verification suites")
    p.add_argument("--claims", default=None, help=f"comma-separated ids (default all: {','.join(verifier.CLAIMS)})")
    p.add_argument("--range", default="1..16", help="inclusive degree range LO..HI")
    p.add_argument("--sampling", choices=("exhaustive", "random"), default="exhaustive")
    p.add_argument("--samples", type=int, default=verifier.DEFAULT_SAMPLES)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "workers", None) is not None and args.workers < 1:
        print("error: --workers must be at least 1", file=sys.stderr)
        return EXIT_CONFIG
    try:
        return args.func(args)
    except (ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
