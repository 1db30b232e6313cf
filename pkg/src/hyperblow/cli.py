"""Command line interface.

Usage:
    hyperblow rho (--complete T R | --sunflower M Q R | --turan T R N | --file PATH) [--parts a,b,c] [--vector]
    hyperblow sunflower-rho --sunflower M Q R --parts a,b,c [--check]
    hyperblow extremal (--complete T R | --sunflower M Q R | ...) --n N [--evaluator solver|closed]
    hyperblow verify SUITE [suite options]

Exit codes: 0 success, 1 usage or input error, 2 numerical non-convergence,
3 verification failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import suites
from .closed_form import SunflowerBlowup, sunflower_rho
from .extremal import EVALUATORS, brute_force_extremal
from .hypergraph import (
    HypergraphError,
    SunflowerParams,
    complete_hypergraph,
    read_hypergraph,
    sunflower,
    turan_hypergraph,
)
from .spectral import (
    DEFAULT_MAX_ITER,
    DEFAULT_TOL,
    ConvergenceError,
    QuotientSystem,
    quotient_spectral_radius,
    spectral_radius,
)

EXIT_OK, EXIT_INPUT, EXIT_NONCONVERGED, EXIT_VERIFY = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _int_list(text: str) -> list[int]:
    try:
        values = [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    if not values:
        raise argparse.ArgumentTypeError("empty list")
    return values


def _positive_float(text: str) -> float:
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError(f"must be positive, got {text}")
    return value


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {text}")
    return value


def _add_source(p, required=True):
    g = p.add_mutually_exclusive_group(required=required)
    g.add_argument("--complete", nargs=2, type=int, metavar=("T", "R"))
    g.add_argument("--sunflower", nargs=3, type=int, metavar=("M", "Q", "R"))
    g.add_argument("--turan", nargs=3, type=int, metavar=("T", "R", "N"))
    g.add_argument("--file", metavar="PATH")


def _add_solver(p):
    p.add_argument("--tol", type=_positive_float, default=DEFAULT_TOL)
    p.add_argument("--max-iter", type=_positive_int, default=DEFAULT_MAX_ITER)


def _source(args):
    if args.complete:
        return complete_hypergraph(*args.complete)
    if args.sunflower:
        return sunflower(*args.sunflower)
    if args.turan:
        return turan_hypergraph(*args.turan)
    return read_hypergraph(args.file)


def _emit(fmt: str, record: dict) -> None:
    if fmt == "json":
        print(json.dumps(record, indent=2, sort_keys=True))
    elif fmt == "csv":
        flat = {k: v for k, v in record.items() if not isinstance(v, (list, dict))}
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=list(flat), lineterminator="\n")
        w.writeheader()
        w.writerow(flat)
        sys.stdout.write(buf.getvalue())
    else:
        for key, value in record.items():
            if key == "schema":
                continue
            if isinstance(value, list):
                value = " ".join(repr(v) for v in value)
            print(f"{key} {value}")


def cmd_rho(args) -> int:
    G = _source(args)
    if args.parts is not None:
        res = quotient_spectral_radius(QuotientSystem(G, tuple(args.parts)), args.tol, args.max_iter)
        vector = QuotientSystem(G, tuple(args.parts)).expand(res.vector)
    else:
        res = spectral_radius(G, args.tol, args.max_iter)
        vector = res.vector
    record = {
        "schema": 1,
        "rho": res.rho,
        "residual": res.residual,
        "iterations": res.iterations,
        "converged": res.converged,
        "bracket": list(res.bracket),
    }
    if args.vector:
        record["vector"] = [float(v) for v in vector]
    _emit(args.format, record)
    return EXIT_OK if res.converged else EXIT_NONCONVERGED


def cmd_sunflower_rho(args) -> int:
    if not args.sunflower:
        raise HypergraphError("sunflower-rho needs --sunflower M Q R")
    sb = SunflowerBlowup(SunflowerParams(*args.sunflower), tuple(args.parts))
    value = sunflower_rho(sb)
    record = {"schema": 1, "rho": value}
    status = EXIT_OK
    if args.check:
        res = quotient_spectral_radius(QuotientSystem(sb.params.hypergraph(), sb.parts), args.tol, args.max_iter)
        record["solver_rho"] = res.rho
        record["difference"] = res.rho - value
        record["converged"] = res.converged
        status = EXIT_OK if res.converged else EXIT_NONCONVERGED
    _emit(args.format, record)
    return status


def cmd_extremal(args) -> int:
    G = _source(args)
    report = brute_force_extremal(G, args.n, args.evaluator, args.tol, args.max_iter, workers=args.workers)
    if args.format == "json":
        print(report.to_json())
    elif args.format == "csv":
        sys.stdout.write(report.to_csv())
    else:
        sys.stdout.write(report.to_text())
    return EXIT_OK


def _suite_reports(args):
    kw = {"evaluator": args.evaluator, "workers": args.workers}
    name = args.suite
    if name == "theorem5":
        return suites.theorem5(args.t or [3, 4], args.r or [3], args.n_max, **kw)
    if name == "theorem41":
        return suites.theorem41(args.m or [2, 3], args.r or [3], args.n_max, **kw)
    if name == "theorem9":
        return suites.theorem9(args.m or [2], args.q or [2], args.r or [3], args.n_max, **kw)
    if name == "lemma4":
        return suites.lemma4(args.count or 100, args.seed)
    if name == "lemma7":
        return suites.lemma7(args.theta_max)
    if name == "lemma8":
        return suites.lemma8(args.theta_max)
    if name == "scan":
        triples = [(m, q, r) for m in (args.m or [2]) for q in (args.q or [2]) for r in (args.r or [3])
                   if m >= 2 and 2 <= q < r]
        return suites.scan(triples)
    return suites.scaling(args.k or [2, 3], args.count or 50, args.seed)


def cmd_verify(args) -> int:
    failed = 0
    records = []
    for rep in _suite_reports(args):
        failed += not rep.passed
        if args.format == "json":
            records.append(rep.to_dict())
        else:
            print(rep.line())
    if args.format == "json":
        print(json.dumps({"schema": 1, "suite": args.suite, "passed": failed == 0, "reports": records},
                         indent=2, sort_keys=True))
    else:
        print(f"{args.suite}: {'PASS' if not failed else f'FAIL ({failed} failing)'}")
    return EXIT_OK if not failed else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hyperblow", description="Spectral radii of blow-ups of uniform hypergraphs.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("rho", help="spectral radius of a hypergraph or of one of its blow-ups")
    _add_source(p)
    _add_solver(p)
    p.add_argument("--parts", type=_int_list, help="blow-up part sizes; solved on the quotient system")
    p.add_argument("--vector", action="store_true", help="also print the Perron vector")
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.set_defaults(func=cmd_rho)

    p = sub.add_parser("sunflower-rho", help="closed-form radius of a sunflower blow-up")
    p.add_argument("--sunflower", nargs=3, type=int, metavar=("M", "Q", "R"), required=True)
    p.add_argument("--parts", type=_int_list, required=True)
    p.add_argument("--check", action="store_true", help="compare with the quotient solver")
    _add_solver(p)
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.set_defaults(func=cmd_sunflower_rho)

    p = sub.add_parser("extremal", help="exhaustive min/max over all blow-ups with n vertices")
    _add_source(p)
    _add_solver(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--evaluator", choices=EVALUATORS, default="solver")
    p.add_argument("--workers", type=_positive_int, default=1)
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.set_defaults(func=cmd_extremal)

    p = sub.add_parser("verify", help="run a named verification suite")
    p.add_argument("suite", choices=suites.SUITES)
    p.add_argument("--t", type=_int_list)
    p.add_argument("--r", type=_int_list)
    p.add_argument("--m", type=_int_list)
    p.add_argument("--q", type=_int_list)
    p.add_argument("--k", type=_int_list)
    p.add_argument("--n-max", type=int)
    p.add_argument("--theta-max", type=int, default=20)
    p.add_argument("--count", type=_positive_int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--evaluator", choices=EVALUATORS, default="solver")
    p.add_argument("--workers", type=_positive_int, default=1)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NONCONVERGED
    except (HypergraphError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
