"""``lonelybus`` command line.

Every command writes one document to stdout (JSON by default, CSV where
``--format csv`` is offered).  Exit status: 0 when everything computed and
all verdicts pass, 2 when a verdict fails, 1 on usage or resource errors
(one-line diagnostic on stderr).

JSON document keys::

    command     subcommand name
    parameters  the parsed numeric parameters
    results     command specific, see README
    verdicts    {name: bool}
    version     package version
    timing      {"seconds": float}

Exact values are ``"numerator/denominator"`` strings; the sibling
``*decimal`` fields are float renderings for reading only.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from fractions import Fraction

from . import __version__
from .exact import dominance_report, exact_pmf, expected_lonely, tail_prob
from .model import EnumerationCapError, InputError, Params, enumeration_cap
from .montecarlo import estimate_tail
from .verify import verify_theorem1, verify_theorem2

EXIT_OK, EXIT_ERROR, EXIT_FAILED = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def rational(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def _value(x: Fraction, name: str = "value") -> dict:
    decimal = "decimal" if name == "value" else f"{name}_decimal"
    return {name: rational(x), decimal: float(x)}


def _config_doc(config):
    if config is None:
        return None
    return {"assignment": list(config.assignment), "targets": list(config.targets)}


# -- commands: each returns (parameters, results, verdicts, csv rows or None)


def cmd_pmf(args):
    pmf = exact_pmf(args.n, args.k)
    rows = [{"s": s, **_value(p)} for s, p in enumerate(pmf.mass)]
    total = sum(pmf.mass, Fraction(0))
    results = {"mass": rows, "total": rational(total)}
    table = (["s", "value", "decimal"], [[r["s"], r["value"], r["decimal"]] for r in rows])
    return {"n": args.n, "k": args.k}, results, {"normalized": total == 1}, table


def cmd_tail(args):
    p = tail_prob(args.n, args.k, args.r)
    return {"n": args.n, "k": args.k, "r": args.r}, _value(p), {}, None


def cmd_expected(args):
    closed = expected_lonely(args.n, args.k)
    mean = exact_pmf(args.n, args.k).mean()
    results = {**_value(closed), "pmf_mean": rational(mean)}
    return {"n": args.n, "k": args.k}, results, {"identity": closed == mean}, None


def cmd_dominance(args):
    report = dominance_report(args.n, args.k_max)
    rows = [
        {
            "k": e.k,
            "r": e.r,
            **_value(e.p_k, "p_k"),
            **_value(e.p_k1, "p_k1"),
            "verdict": e.verdict,
            "holds": e.holds,
            "strict": e.strict,
        }
        for e in report.entries
    ]
    header = ["n", "k", "r", "p_k", "p_k_decimal", "p_k1", "p_k1_decimal", "verdict", "holds", "strict"]
    table = (header, [[args.n] + [row[h] for h in header[1:]] for row in rows])
    return {"n": args.n, "k_max": args.k_max}, {"rows": rows}, {"dominance": report.passed}, table


def cmd_verify(args):
    if args.theorem == 1:
        if args.r is not None:
            raise InputError("--r is only used with --theorem 2")
        report = verify_theorem1(args.n, args.k, workers=args.workers, max_enum=args.max_enum)
        params = {"theorem": 1, "n": args.n, "k": args.k}
    else:
        if args.r is None:
            raise InputError("--theorem 2 needs --r")
        report = verify_theorem2(args.n, args.k, args.r, workers=args.workers, max_enum=args.max_enum)
        params = {"theorem": 2, "n": args.n, "k": args.k, "r": args.r}
    claims = [
        {
            "name": c.name,
            **_value(c.lhs, "lhs"),
            "relation": c.relation,
            **_value(c.rhs, "rhs"),
            "holds": c.holds,
            "counterexample": _config_doc(c.counterexample),
            "witness": _config_doc(c.witness),
        }
        for c in report.claims
    ]
    results = {
        "claims": claims,
        "observations": _jsonable(report.observations),
        "truncation_m_max": report.truncation,
        "kernel": report.kernel,
        "configurations": Params(args.n, args.k).config_count,
    }
    return params, results, {"all_claims": report.passed}, None


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    return obj


def cmd_simulate(args):
    est = estimate_tail(args.n, args.k, args.r, args.trials, args.seed, workers=args.workers)
    results = {
        **_value(est.point, "point"),
        "hits": est.hits,
        "trials": est.trials,
        "ci_low": est.ci_low,
        "ci_high": est.ci_high,
        "seed": est.seed,
        "workers": est.workers,
    }
    params = {"n": args.n, "k": args.k, "r": args.r, "trials": args.trials, "seed": args.seed}
    return params, results, {}, None


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--max-enum", type=int, default=argparse.SUPPRESS,
                        help="enumeration cap in configurations (env LONELYBUS_MAX_ENUM)")
    common.add_argument("--quiet", action="store_true", default=argparse.SUPPRESS,
                        help="print no document; report through the exit status only")

    parser = _Parser(prog="lonelybus", description="Lonely passenger distributions and proof checks")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--max-enum", type=int, default=None, help=argparse.SUPPRESS)
    parser.add_argument("--quiet", action="store_true", default=False, help=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def nk(p):
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--k", type=int, required=True)

    p = sub.add_parser("pmf", parents=[common], help="exact distribution of the lonely count")
    nk(p)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.set_defaults(func=cmd_pmf)

    p = sub.add_parser("tail", parents=[common], help="exact P(L >= r)")
    nk(p)
    p.add_argument("--r", type=int, required=True)
    p.set_defaults(func=cmd_tail)

    p = sub.add_parser("expected", parents=[common], help="exact mean lonely count")
    nk(p)
    p.set_defaults(func=cmd_expected)

    p = sub.add_parser("dominance", parents=[common], help="tail comparison table for k vs k+1")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k-max", type=int, required=True)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.set_defaults(func=cmd_dominance)

    p = sub.add_parser("verify", parents=[common], help="exhaustively check the coupling proof")
    p.add_argument("--theorem", type=int, choices=[1, 2], required=True)
    nk(p)
    p.add_argument("--r", type=int)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("simulate", parents=[common], help="Monte Carlo estimate of P(L >= r)")
    nk(p)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_simulate)
    return parser


def _csv(table) -> str:
    header, rows = table
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "workers", 1) < 1:
            raise InputError("--workers must be >= 1")
        args.max_enum = enumeration_cap(args.max_enum)
        start = time.perf_counter()
        params, results, verdicts, table = args.func(args)
        elapsed = time.perf_counter() - start
    except (UsageError, InputError, EnumerationCapError) as exc:
        print(f"lonelybus: error: {exc}", file=stderr)
        return EXIT_ERROR

    if not args.quiet:
        if getattr(args, "format", "json") == "csv":
            stdout.write(_csv(table))
        else:
            doc = {
                "command": args.command,
                "parameters": params,
                "results": results,
                "verdicts": verdicts,
                "version": __version__,
                "timing": {"seconds": round(elapsed, 6)},
            }
            json.dump(doc, stdout, indent=2, ensure_ascii=False)
            stdout.write("\n")
    return EXIT_OK if all(verdicts.values()) else EXIT_FAILED


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
