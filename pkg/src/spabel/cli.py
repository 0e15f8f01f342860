"""Command-line driver: every verification suite with deterministic output.

Exit codes: 0 all checks passed, 1 a check failed, 2 usage error,
3 hypothesis violation, 4 enumeration budget refused, 5 unreadable input.
Errors go to stderr as one JSON line {"error": kind, "reason": text}.
"""

import argparse
import json
import sys
import time

from . import abelianization, exterior, homology, shadow
from .errors import BudgetError, HypothesisError

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_HYPOTHESIS, EXIT_BUDGET, EXIT_INPUT = range(6)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        _fail("usage", message)
        sys.exit(EXIT_USAGE)


def _fail(kind, reason):
    print(json.dumps({"error": kind, "reason": str(reason)}, sort_keys=True), file=sys.stderr)


def _group_args(p, need_n=False):
    p.add_argument("--g", type=int, required=True, help="genus")
    p.add_argument("--L", type=int, required=True, help="level")
    if need_n:
        p.add_argument("--n", type=int, required=True, choices=(0, 1),
                       help="boundary components")


def build_parser():
    parser = _Parser(prog="spabel", description=__doc__.splitlines()[0])
    parser.add_argument("--format", choices=("text", "json"), default="text")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("verify-identities", help="exact check of the level-L^2 commutator identities")
    _group_args(p)

    p = sub.add_parser("phi-check", help="sampled homomorphism laws of phi")
    _group_args(p)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--word-len", type=int, default=16)

    p = sub.add_parser("certify", help="write commutator certificates as JSON lines")
    _group_args(p)
    p.add_argument("--out", required=True)

    p = sub.add_parser("check-cert", help="check a certificate file")
    p.add_argument("file")

    p = sub.add_parser("oracle", help="finite-shadow enumeration mod L^2")
    _group_args(p)
    p.add_argument("--mode", required=True, choices=("parametrize", "plain", "normal", "z-probe"))
    p.add_argument("--budget", type=int, default=shadow.DEFAULT_BUDGET)

    p = sub.add_parser("coinvariants", help="coinvariants of exterior powers")
    _group_args(p)
    p.add_argument("--module", required=True, choices=("wedge3", "wedge3modh", "wedge2"))

    p = sub.add_parser("orders", help="order bookkeeping of H_1 of the level-L subgroup")
    _group_args(p, need_n=True)
    p.add_argument("--allow-outside", action="store_true",
                   help="report with flags instead of refusing outside g >= 3, L odd")

    for p in sub.choices.values():
        p.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS)
    return parser


class _InputError(Exception):
    pass


def _validate(args):
    if hasattr(args, "g") and args.g < 1:
        raise HypothesisError(f"g must be >= 1, got {args.g}")
    if hasattr(args, "L") and args.L < 2:
        raise HypothesisError(f"L must be >= 2, got {args.L}")


def _run(args):
    cmd = args.command
    if cmd == "verify-identities":
        return abelianization.verify_commutator_identities(args.g, args.L)
    if cmd == "phi-check":
        return abelianization.phi_laws(args.g, args.L, args.samples, args.seed, args.word_len)
    if cmd == "certify":
        certs = abelianization.generate_certificates(args.g, args.L)
        ok = [abelianization.check_certificate(c) for c in certs]
        abelianization.write_certificates(certs, args.out)
        return {"g": args.g, "L": args.L, "count": len(certs), "out": args.out,
                "targets": [str(c.target) for c in certs], "passed": all(ok)}
    if cmd == "check-cert":
        try:
            certs = abelianization.read_certificates(args.file)
        except (OSError, ValueError) as exc:
            raise _InputError(exc) from None
        results = []
        for c in certs:
            try:
                ok = abelianization.check_certificate(c)
            except ValueError:
                ok = False
            results.append({"g": c.g, "L": c.L, "target": str(c.target), "ok": ok})
        return {"file": args.file, "count": len(results), "results": results,
                "failures": sum(not r["ok"] for r in results),
                "passed": bool(results) and all(r["ok"] for r in results)}
    if cmd == "oracle":
        fn = {"parametrize": shadow.parametrize_report, "plain": shadow.plain_span_check,
              "normal": shadow.normal_closure_check, "z-probe": shadow.z_membership_probe}
        return fn[args.mode](args.g, args.L, args.budget)
    if cmd == "coinvariants":
        return exterior.coinvariants_report(args.g, args.L, args.module)
    if cmd == "orders":
        return homology.h1_order_report(args.g, args.L, args.n, allow_outside=args.allow_outside)
    raise ValueError(f"unknown command {cmd}")


def _text(report):
    lines = []
    for key, value in report.items():
        if key in ("checks", "results", "labels") and isinstance(value, list):
            lines.append(f"{key}:")
            lines += ["  " + json.dumps(v, sort_keys=True) for v in value]
        else:
            shown = value if isinstance(value, str) else json.dumps(value, sort_keys=True)
            lines.append(f"{key}: {shown}")
    return "\n".join(lines)


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    start = time.perf_counter()
    try:
        _validate(args)
        report = _run(args)
    except HypothesisError as exc:
        _fail("hypothesis", exc)
        return EXIT_HYPOTHESIS
    except BudgetError as exc:
        _fail("budget", exc)
        return EXIT_BUDGET
    except _InputError as exc:
        _fail("input", exc)
        return EXIT_INPUT
    if args.format == "json":
        print(json.dumps(report, sort_keys=True, indent=2))
    else:
        print(_text(report))
        print(f"elapsed: {time.perf_counter() - start:.3f}s")
    return EXIT_OK if report.get("passed", False) else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
