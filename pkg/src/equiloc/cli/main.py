"""``equiloc run <file>``: parse a problem file and print its report."""

from __future__ import annotations

import argparse
import json
import sys

from ..errors import EquilocError, GroebnerBudgetExceeded, InputError
from .problem import parse_problem, parse_window
from .report import Options, exit_code, render_json, render_text, run


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="equiloc", description="Equivariant localization and Smith theory at desk scale.")
    sub = ap.add_subparsers(dest="command", required=True)
    r = sub.add_parser("run", help="run the queries of a problem file")
    r.add_argument("file")
    r.add_argument("--json", action="store_true", help="emit the versioned JSON report")
    r.add_argument("--groebner-budget", type=int, metavar="N", help="max S-pair reductions per Groebner basis")
    r.add_argument("--truncation", type=int, metavar="N", help="order of the Steenrod operations checked")
    r.add_argument("--window", metavar="a0..a1,b0..b1", help="default bidegree window for smith queries")
    r.add_argument("--seed", type=int, default=0, help="seed for randomized spot checks")
    f = sub.add_parser("format", help="print the canonical form of a problem file")
    f.add_argument("file")
    return ap


def _fail(err: BaseException, as_json: bool, where: str = "") -> int:
    code = exit_code(err)
    if as_json:
        obj = {"schema": "equiloc-report/1", "error": {"type": type(err).__name__, "message": str(err), "exit_code": code}}
        sys.stdout.write(json.dumps(obj, indent=2) + "\n")
    else:
        sys.stderr.write(f"equiloc: {where}{err}\n")
    return code


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    as_json = getattr(args, "json", False)
    try:
        with open(args.file, encoding="utf-8") as fh:
            text = fh.read()
    except (OSError, UnicodeDecodeError) as err:
        return _fail(InputError(f"cannot read {args.file}: {err}"), as_json)
    try:
        problem = parse_problem(text)
    except EquilocError as err:
        return _fail(err, as_json, f"{args.file}:")
    if args.command == "format":
        from .problem import format_problem

        sys.stdout.write(format_problem(problem))
        return 0
    try:
        window = parse_window(args.window) if args.window else None
        if args.groebner_budget is not None and args.groebner_budget <= 0:
            raise InputError("--groebner-budget must be positive")
        if args.truncation is not None and args.truncation < 0:
            raise InputError("--truncation must be non-negative")
    except EquilocError as err:
        return _fail(err, as_json)
    opts = Options(args.groebner_budget, args.truncation, window, args.seed)
    report, code = run(problem, opts)
    sys.stdout.write(render_json(report) if as_json else render_text(report))
    return code


if __name__ == "__main__":
    sys.exit(main())
