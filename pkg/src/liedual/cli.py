"""Command-line front end.

Exit codes: 0 when every check passes, 1 when a mathematical check fails,
2 on usage or parse errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .algebra import AlgebraKind, LieDualError, parse_scalar
from .bialgebra import BialgebraParams, InvalidParams, witt_r, xy_r
from .dual import decompose_components, decomposition_to_json, dual_from_json, is_in_restricted_dual
from .dual_bracket import (
    MUTATIONS,
    build_table,
    cross_check,
    format_finite,
    table_to_csv,
    table_to_json,
    table_to_latex,
)
from .tensors import Tensor2, cybe, tensor_from_json, tensor_to_json
from .verify import SUITES, run_suites

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _rational(text: str):
    try:
        return parse_scalar(text)
    except LieDualError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _load_json(path: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc


def _params(args) -> BialgebraParams:
    if args.ell is None or args.k is None:
        raise UsageError("--family xy needs --ell and --k")
    try:
        return BialgebraParams(args.n, args.ell, args.k)
    except InvalidParams as exc:
        raise UsageError(str(exc)) from exc


def _window(args) -> tuple[int, int]:
    lo, hi = args.window
    if lo > hi:
        raise UsageError("--window LO HI must satisfy LO <= HI")
    return lo, hi


def _check_n(args) -> None:
    if args.n is None:
        raise UsageError("--n is required")
    if args.n == 1:
        raise UsageError("n = 1 is excluded")


def cmd_cybe(args) -> int:
    kind = AlgebraKind(args.algebra)
    if args.family == "raw":
        if not args.r:
            raise UsageError("--family raw needs --r FILE")
        try:
            r = tensor_from_json(_load_json(args.r))
        except LieDualError as exc:
            raise UsageError(str(exc)) from exc
        if not isinstance(r, Tensor2):
            raise UsageError("--r must hold a rank-2 tensor")
        kind = r.kind
    else:
        _check_n(args)
        try:
            if args.family == "witt-n":
                r = witt_r(kind, args.n).underlying
            else:
                if kind is AlgebraKind.ONE_SIDED_WITT:
                    raise UsageError("--family xy needs --algebra witt or virasoro")
                r = xy_r(kind, _params(args)).underlying
        except InvalidParams as exc:
            raise UsageError(str(exc)) from exc
    residual = cybe(kind, r)
    ok = not residual
    report = {"r": tensor_to_json(r), "residual": tensor_to_json(residual),
              "status": "PASS" if ok else "FAIL"}
    _emit(json.dumps(report, indent=2) + "\n", args.out)
    print("PASS" if ok else "FAIL", file=sys.stderr)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_dual_table(args) -> int:
    kind = AlgebraKind(args.algebra)
    _check_n(args)
    window = _window(args)
    if args.family == "raw":
        raise UsageError("dual-table supports --family witt-n or xy")
    try:
        params = _params(args) if args.family == "xy" else args.n
        if args.cross_check:
            table, _, mismatches = cross_check(kind, params, window, args.mutate)
        else:
            table, mismatches = build_table(kind, params, window, args.mutate), []
    except InvalidParams as exc:
        raise UsageError(str(exc)) from exc
    if args.format == "json":
        text = json.dumps(table_to_json(table), indent=2) + "\n"
    elif args.format == "csv":
        text = table_to_csv(table)
    else:
        text = table_to_latex(table)
    _emit(text, args.out)
    if args.cross_check:
        print(f"{len(mismatches)} mismatches", file=sys.stderr)
        for i, j, closed, oracle in mismatches[:20]:
            print(f"  [{i},{j}] closed-form {format_finite(closed)} != oracle {format_finite(oracle)}",
                  file=sys.stderr)
        return EXIT_OK if not mismatches else EXIT_FAIL
    return EXIT_OK


def cmd_verify(args) -> int:
    names = args.suite or None
    window = _window(args) if args.window is not None else None
    results = run_suites(names, window, args.mutate)
    for res in results:
        print(res.line())
    ok = all(r.passed for r in results)
    print("ALL PASS" if ok else "SOME CHECKS FAILED")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_decompose(args) -> int:
    try:
        f = dual_from_json(_load_json(args.element))
    except LieDualError as exc:
        raise UsageError(str(exc)) from exc
    if not is_in_restricted_dual(f):
        print("FAIL: element is not in the restricted dual", file=sys.stderr)
        return EXIT_FAIL
    result = decompose_components(f)
    _emit(json.dumps(decomposition_to_json(result), indent=2) + "\n", args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="liedual", description="Dual Lie bialgebras of Witt and Virasoro type, exactly.")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--algebra", choices=[k.value for k in AlgebraKind], default="witt")
    common.add_argument("--family", choices=["witt-n", "xy", "raw"], default="witt-n")
    common.add_argument("--n", type=int)
    common.add_argument("--ell", type=_rational)
    common.add_argument("--k", type=_rational)
    common.add_argument("--out", metavar="PATH")
    common.add_argument("--mutate", choices=sorted(MUTATIONS),
                        help="flip the sign of one closed-form case (self-test of the oracle)")

    p = sub.add_parser("cybe", parents=[common], help="check the classical Yang-Baxter equation")
    p.add_argument("--r", metavar="FILE", help="tensor JSON for --family raw")
    p.set_defaults(func=cmd_cybe)

    p = sub.add_parser("dual-table", parents=[common], help="emit a dual bracket table")
    p.add_argument("--window", nargs=2, type=int, metavar=("LO", "HI"), default=[-3, 3])
    p.add_argument("--format", choices=["json", "csv", "latex"], default="json")
    p.add_argument("--cross-check", action="store_true",
                   help="rebuild the table with the pairing oracle and diff")
    p.set_defaults(func=cmd_dual_table)

    p = sub.add_parser("verify", parents=[common], help="run the verification suites")
    p.add_argument("--suite", action="append", choices=sorted(SUITES))
    p.add_argument("--window", nargs=2, type=int, metavar=("LO", "HI"))
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("decompose", parents=[common], help="split a recursive series into components")
    p.add_argument("element", help="dual element JSON file, or - for stdin")
    p.set_defaults(func=cmd_decompose)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"liedual: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
