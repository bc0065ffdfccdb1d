"""``singzeta`` command line: JSON in, plain text out.

Exit status: 0 all checks pass, 1 a verification failed, 2 invalid input,
3 enumeration work limit exhausted.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import formats
from .errors import InvalidSemigroup, SingZetaError, WorkLimitExceeded
from .global_zeta import assemble_global, divisor_series_oracle, motivic_identity
from .oracle import SMALL_PRIMES, verify_model
from .ratfun import series_expand
from .semigroup import GoodSemigroup, is_symmetric
from .universal import (
    BIG_ENOUGH,
    assemble_universal,
    counting_ca,
    generalized_poincare,
    specialize_counting,
    specialize_monodromy,
)

MAX_ORDER = 64


class InputError(Exception):
    pass


def _fmt_series(coeffs) -> str:
    return "[" + ", ".join(str(c) for c in coeffs) + "]"


def _semigroup(source: str) -> GoodSemigroup:
    obj = formats.load_json(source)
    if obj.get("kind") == "curve":
        raise InputError("expected a semigroup description, got a curve")
    return formats.semigroup_from_json(obj)


def cmd_semigroup(args, out) -> int:
    S = _semigroup(args.input)
    print(f"d: {S.d}", file=out)
    print(f"conductor: {list(S.conductor)}", file=out)
    print(f"delta: {S.delta}", file=out)
    print(f"small: {[list(s) for s in S.sorted_small()]}", file=out)
    if S.d == 1:
        print(f"symmetric: {str(is_symmetric(S)).lower()}", file=out)
    print("validation: ok", file=out)
    return 0


def cmd_universal(args, out) -> int:
    S = _semigroup(args.input)
    z = generalized_poincare(S) if args.poincare else assemble_universal(S)
    print(z.value, file=out)
    return 0


def cmd_specialize(args, out) -> int:
    S = _semigroup(args.input)
    Z = assemble_universal(S)
    if args.monodromy:
        f = specialize_monodromy(Z)
        print(f, file=out)
    elif args.count is not None:
        print(f"Z(U={args.count}, Ti=T): {specialize_counting(Z, args.count)}", file=out)
        f = counting_ca(S, args.count)
        print(f"Z_Ca(T): {f}", file=out)
    else:
        print(f"Z(T1..Td, U=L): {Z.value}", file=out)
        print(f"Pg(T1..Td): {generalized_poincare(S).value}", file=out)
        print(f"note: {BIG_ENOUGH}", file=out)
        return 0
    if args.expand is not None:
        print(f"series: {_fmt_series(series_expand(f, args.expand))}", file=out)
    return 0


def cmd_oracle(args, out) -> int:
    model = formats.model_from_json(formats.load_json(args.input))
    S = _semigroup(args.semigroup) if args.semigroup else None
    report = verify_model(model, S, args.max_norm, args.work_limit)
    for row in report.rows:
        print(row.line(), file=out)
    if report.note:
        print(f"note: {report.note}", file=out)
    counts = {r.status: 0 for r in report.rows}
    for r in report.rows:
        counts[r.status] += 1
    print("summary: " + " ".join(f"{k}={v}" for k, v in sorted(counts.items())), file=out)
    return 0 if report.ok else 1


def cmd_global(args, out) -> int:
    model = formats.curve_from_json(formats.load_json(args.input))
    n = args.expand
    z = assemble_global(model)
    print(f"Z(C, T): {z}", file=out)
    print(f"motivic: {motivic_identity(model)}", file=out)
    for note in model.notes:
        print(f"note: {note}", file=out)
    assembled = series_expand(z, n)
    print(f"assembled: {_fmt_series(assembled)}", file=out)
    if model.smooth.name != "P1":
        print("oracle: SKIP (normalization is not P1)", file=out)
        return 0
    ok = True
    for source in ("formula", "enumerate") if model.modulus else ("formula",):
        counted = divisor_series_oracle(model, min(n, 10), source)
        match = [int(a) == b for a, b in zip(assembled, counted)]
        status = "PASS" if all(match) else "FAIL"
        ok &= all(match)
        print(f"oracle[{source}]: {_fmt_series(counted)} {status}", file=out)
    return 0 if ok else 1


def _prime(text: str) -> int:
    q = int(text)
    if q not in SMALL_PRIMES:
        raise argparse.ArgumentTypeError(f"q must be a prime <= 13, got {q}")
    return q


def _order(text: str) -> int:
    n = int(text)
    if not 0 <= n <= MAX_ORDER:
        raise argparse.ArgumentTypeError(f"expansion order must be in 0..{MAX_ORDER}")
    return n


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="singzeta", description=__doc__.splitlines()[0])
    parser.add_argument("--work-limit", type=int, default=None,
                        help="enumeration bound (default: $SINGZETA_WORK_LIMIT or 10^7)")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("-i", "--input", required=True,
                       help="JSON file, inline JSON, or the name of a shipped fixture")
        p.set_defaults(func=func)
        return p

    add("semigroup", cmd_semigroup, "describe and validate a semigroup")
    p = add("universal", cmd_universal, "print the universal zeta function")
    p.add_argument("--poincare", action="store_true", help="print U^-(delta+1) times it instead")
    p = add("specialize", cmd_specialize, "monodromy, counting or motivic specialization")
    kind = p.add_mutually_exclusive_group(required=True)
    kind.add_argument("--monodromy", action="store_true")
    kind.add_argument("--count", type=_prime, metavar="Q")
    kind.add_argument("--motivic", action="store_true")
    p.add_argument("--expand", type=_order, metavar="N")
    p = add("oracle", cmd_oracle, "compare a finite-field ring model with the formulas")
    p.add_argument("--semigroup", help="expected semigroup; mismatches are reported as SKIP")
    p.add_argument("--max-norm", type=_order, default=6)
    p = add("global", cmd_global, "assemble a global zeta and check it against divisor counts")
    p.add_argument("--expand", type=_order, default=10)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, out)
    except WorkLimitExceeded as exc:
        print(f"error: work limit exhausted: {exc}", file=sys.stderr)
        return 3
    except InvalidSemigroup as exc:
        print("error: invalid semigroup", file=sys.stderr)
        for v in exc.violations:
            print(f"  {v}", file=sys.stderr)
        return 2
    except (InputError, SingZetaError, ValueError, KeyError, TypeError,
            FileNotFoundError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
