"""Command-line entry point: ``qlab <subcommand> ...``."""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from ..finite import LimitFamily, NormalizationError, limit_series, reflect_finite, stabilization_order
from ..oracle import count_gap_partitions, enumerate_gap_partitions, variant_spec
from ..report import coeff_to_json
from ..ring import TruncLaurentSeries
from ..sums import ReductionFailedError, reduce_to_basis
from .catalog import named_series
from .verify import EXIT_OK, EXIT_USAGE, FILTERS, exit_code, run_all, verify

EXIT_FAILED = 1


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _dump(obj) -> None:
    print(json.dumps(obj, indent=2))


def _coeff_lines(f: TruncLaurentSeries, order: int) -> list[tuple[int, object]]:
    lo = min(0, f.min_exp) if f.coeffs else 0
    return [(e, f[e]) for e in range(lo, order + 1)]


def cmd_expand(args) -> int:
    try:
        f = named_series(args.series, args.order)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None
    rows = _coeff_lines(f, args.order)
    if args.json:
        _dump([{"exponent": e, "coefficient": coeff_to_json(c)} for e, c in rows])
    else:
        for e, c in rows:
            print(e, c)
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        rep = verify(args.id, args.order)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None
    if args.json:
        _dump(rep.to_json())
    else:
        print(rep.summary())
    return exit_code([rep])


def cmd_verify_all(args) -> int:
    reports, code = run_all(args.order, args.filter)
    if args.json:
        _dump([r.to_json() for r in reports])
    else:
        for r in reports:
            print(f"{r.summary()}  ({r.status})")
        bad = sum(not r.agrees for r in reports)
        print(f"{len(reports)} identities, {bad} mismatches, exit code {code}")
    return code


def cmd_reflect(args) -> int:
    try:
        fam = LimitFamily(args.family, args.residue)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    try:
        poly = reflect_finite(fam.source, args.M, fam.residue, order=args.order)
    except NormalizationError as exc:
        print(f"normalization failed: {exc}", file=sys.stderr)
        return EXIT_FAILED
    stable = None
    if args.M >= 1:
        stable = stabilization_order(fam, args.M, cap=args.order)
    rows = _coeff_lines(poly, args.order)
    if args.json:
        _dump({"family": str(fam), "M": args.M, "order": args.order, "stabilization_order": stable,
               "coefficients": [coeff_to_json(c) for _, c in rows],
               "limit": [coeff_to_json(c) for _, c in _coeff_lines(limit_series(fam, args.order), args.order)]})
    else:
        for e, c in rows:
            print(e, c)
        if stable is not None:
            print(f"stabilization order: {stable} (checked through q^{args.order})")
    return EXIT_OK


def cmd_reduce(args) -> int:
    try:
        combo = reduce_to_basis((args.a, args.b), args.budget, args.order)
    except ReductionFailedError as exc:
        print(f"reduction failed: {exc}", file=sys.stderr)
        return EXIT_FAILED
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.json:
        _dump({
            "source": [args.a, args.b],
            "steps": combo.steps,
            "terms": [{"a": a, "b": b, "coefficient": {str(e): coeff_to_json(c) for e, c in sorted(p.terms().items())}}
                      for (a, b), p in sorted(combo.terms.items())],
            "certificate": combo.certificate.payload(),
        })
    else:
        print(combo)
        print(f"steps: {combo.steps}; certificate: {combo.certificate.summary()}")
    return EXIT_OK


def cmd_partitions(args) -> int:
    try:
        spec = variant_spec(args.variant, args.max_part)
        count = count_gap_partitions(spec, args.n)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    parts = list(enumerate_gap_partitions(spec, args.n)) if args.list else None
    if args.json:
        out = {"variant": list(spec.variant), "n": args.n, "max_part": args.max_part, "count": count}
        if parts is not None:
            out["partitions"] = [list(p) for p in parts]
        _dump(out)
    else:
        print(count)
        for p in parts or ():
            print(" ".join(map(str, p)))
    return EXIT_OK


def _non_negative(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="qlab", description="q-series identity lab")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("expand", help="print coefficients of a named series")
    s.add_argument("--series", required=True, help="S(a,b), F0, G2*, KR3, bracket:c1,c2,c3,c4, ...")
    s.add_argument("--order", type=_non_negative, required=True)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_expand)

    s = sub.add_parser("verify", help="verify one catalog identity")
    s.add_argument("--id", required=True)
    s.add_argument("--order", type=_non_negative)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("verify-all", help="verify the whole catalog")
    s.add_argument("--filter", choices=FILTERS, default="all")
    s.add_argument("--order", type=_non_negative)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_verify_all)

    s = sub.add_parser("reflect", help="normalized reflection of a finite family")
    s.add_argument("--family", required=True, choices=["F", "G", "Fstar", "Gstar", "RK4", "RK1"])
    s.add_argument("--residue", type=int, choices=[0, 1, 2], required=True)
    s.add_argument("--M", type=_non_negative, required=True)
    s.add_argument("--order", type=_non_negative, required=True)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_reflect)

    s = sub.add_parser("reduce", help="express S(a,b) through the 3x3 basis")
    s.add_argument("--a", type=int, required=True)
    s.add_argument("--b", type=int, required=True)
    s.add_argument("--budget", type=int, default=10_000)
    s.add_argument("--order", type=_non_negative, default=200)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_reduce)

    s = sub.add_parser("partitions", help="count gap-condition partitions")
    s.add_argument("--variant", required=True, help="e.g. S(0,-1) or 0,-1")
    s.add_argument("--n", type=_non_negative, required=True)
    s.add_argument("--max-part", type=_non_negative)
    s.add_argument("--list", action="store_true")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_partitions)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"qlab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
