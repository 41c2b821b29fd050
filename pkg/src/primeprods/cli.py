"""Command-line frontend: every subsystem as a subcommand.

Point queries emit a single JSON object, sweeps emit JSON lines; `--format
csv|tsv` switches to delimited rows with the same columns.  Exit codes: 0 on
success, 1 when an asserted inequality or oracle cross-check fails, 2 on usage
errors.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import random
import sys

from . import acceptance as acceptance_mod
from . import admissibility, coverage, expsums, sieve_analysis
from .modular import Modulus

ENV_BUDGET = "PRIMEPRODS_BUDGET"
ENV_SLACK_C = "PRIMEPRODS_SLACK_C"
ENV_SLACK_EXP = "PRIMEPRODS_SLACK_EXP"


def _fmt_cell(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return f"{v:.12g}"
    if v is None:
        return ""
    if isinstance(v, (list, tuple, dict)):
        return json.dumps(v, separators=(",", ":"))
    return str(v)


def _emit(records: list[dict], args) -> None:
    if args.format == "json":
        text = "\n".join(json.dumps(r) for r in records)
    else:
        sep = "," if args.format == "csv" else "\t"
        cols = list(records[0].keys())
        lines = [sep.join(cols)]
        lines += [sep.join(_fmt_cell(r.get(c)) for c in cols) for r in records]
        text = "\n".join(lines)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _grid(lo: float, hi: float, step: float) -> list[float]:
    n = int(round((hi - lo) / step))
    return [round(lo + i * step, 12) for i in range(n + 1) if lo + i * step <= hi + 1e-12]


def _cmd_admissibility(args) -> tuple[list[dict], int]:
    if args.table:
        return _cmd_reproduce_table(args)
    if args.scan:
        rows = admissibility.region_scan(
            args.case, args.ell,
            _grid(args.alpha_min, args.alpha_max, args.step),
            _grid(args.beta_min, args.beta_max, args.step),
        )
        return rows, 0
    beta = args.alpha if args.beta is None else args.beta
    query = admissibility.query_for_case(args.case, args.ell, args.alpha, beta)
    v = admissibility.check_admissibility(query)
    return [{
        "case": args.case, "k": query.k, "ell": args.ell,
        "alpha": args.alpha, "beta": beta,
        "ratio": v.ratio, "theta": v.margins["theta"],
        "passes": v.passes, "binding_constraint": v.binding_constraint,
    }], 0


def _cmd_reproduce_table(args) -> tuple[list[dict], int]:
    table = admissibility.reproduce_table()
    if args.format == "json":
        return [table], 0
    print(table["note"], file=sys.stderr)
    return table["rows"], 0


def _cmd_coverage(args) -> tuple[list[dict], int]:
    x = args.m if args.x is None else args.x
    y = args.m if args.y is None else args.y
    report = coverage.coverage_check(
        args.m, x, y, args.k, args.ell,
        allow_large=args.allow_large, witnesses=not args.no_witnesses,
    )
    return [{
        "m": report.m, "x": report.x, "y": report.y,
        "k": report.k, "ell": report.ell, "phi": report.phi,
        "covered_count": len(report.covered),
        "uncovered": list(report.uncovered),
        "witnesses": {str(a): list(t) for a, t in sorted(report.witness.items())},
    }], 0


def _cmd_expsum(args) -> tuple[list[dict], int]:
    value = expsums.s_k(args.a, args.x, args.k, args.m)
    bound = float(expsums.build_counts(args.x, args.m, args.k).total())
    passed = value.abs <= bound * (1.0 + 1e-12)
    record = {
        "op": "expsum",
        "params": {"a": args.a, "x": args.x, "k": args.k, "m": args.m},
        "value_re": value.value.real,
        "value_im": value.value.imag,
        "bound": bound,
        "pass": passed,
    }
    code = 0 if passed else 1
    if args.check_direct:
        direct = expsums.s_k_direct(args.a, args.x, args.k, args.m, budget=args.budget)
        diff = abs(value.value - direct.value)
        tol = 1e-9 * max(bound, 1.0)
        record["direct_re"] = direct.value.real
        record["direct_im"] = direct.value.imag
        record["direct_diff"] = diff
        if diff > tol:
            record["pass"] = False
            code = 1
    return [record], code


def _cmd_energy(args) -> tuple[list[dict], int]:
    report = expsums.check_energy_bound(args.x, args.m)
    return [{"E": report.energy, "rhs": report.rhs, "pass": report.passed}], (
        0 if report.passed else 1
    )


def _cmd_bilinear(args) -> tuple[list[dict], int]:
    rng = random.Random(args.seed)
    records = []
    code = 0
    for i in range(args.count):
        u_set, v_set, phi, psi, a, mod = expsums.random_bilinear_instance(rng, m=args.m)
        report = expsums.check_bilinear(u_set, v_set, phi, psi, a, mod)
        records.append({
            "op": "bilinear",
            "params": {"m": mod.m, "a": a, "u_size": len(u_set),
                       "v_size": len(v_set), "seed": args.seed, "index": i},
            "lhs": report.lhs,
            "rhs": report.rhs,
            "pass": report.passed,
        })
        if not report.passed:
            code = 1
    return records, code


def _cmd_tk(args) -> tuple[list[dict], int]:
    rec = expsums.delta_k(args.a, args.x, args.y, args.k, args.m,
                          slack_c=args.slack_c, slack_exp=args.slack_exp)
    return [{
        "op": "tk",
        "params": {"a": args.a, "x": args.x, "y": args.y, "k": args.k, "m": args.m},
        "t_count": rec.t_count,
        "main_term": rec.main_term,
        "delta": rec.delta,
        "bound_rhs": rec.bound_rhs,
        "range_ok": rec.range_ok,
    }], 0


def _cmd_sieve(args) -> tuple[list[dict], int]:
    seq = sieve_analysis.build_sequence(
        args.a, args.m, args.x, args.y, args.k, budget=args.budget)
    if args.profile:
        prof = sieve_analysis.profile_distribution(seq, args.D)
        rows = [{"d": r.d, "count": r.count, "expected": r.expected, "r": r.remainder}
                for r in prof.records]
        print(f"sum_r = {prof.sum_remainders:.12g}; "
              f"curves = { {k: f'{v:.6g}' for k, v in prof.reference_curves.items()} }",
              file=sys.stderr)
        return rows, 0
    record = {
        "op": "sieve",
        "params": {"m": args.m, "x": args.x, "y": args.y, "k": args.k, "a": args.a},
        "size": seq.total,
        "distinct": len(seq.multiplicity),
        "witness": None,
    }
    if args.ell is not None:
        hit = sieve_analysis.end_to_end_witness(
            args.m, args.x, args.y, args.k, args.ell, args.a, budget=args.budget)
        if hit is not None:
            record["witness"] = {"value": hit.value, "primes": list(hit.primes)}
    return [record], 0


def _cmd_level(args) -> tuple[list[dict], int]:
    le = sieve_analysis.level_exponents(
        args.k, args.alpha, args.beta, args.epsilon, args.ell)
    return [{
        "k": le.k, "alpha": le.alpha, "beta": le.beta, "epsilon": le.epsilon,
        "d_exponent": le.d_exponent, "g": le.degree, "theta": le.theta,
        "pass": le.sieve_pass,
    }], 0


def _cmd_acceptance(args) -> tuple[list[dict], int]:
    indices = None
    if args.criteria:
        indices = [int(tok) for tok in args.criteria.split(",")]
    results = acceptance_mod.run(indices)
    records = []
    code = 0
    for r in results:
        print(f"ACCEPTANCE {r.index:>2} [{'PASS' if r.passed else 'FAIL'}] "
              f"{r.name}: {r.detail}", file=sys.stderr)
        records.append({"criterion": r.index, "name": r.name,
                        "pass": r.passed, "detail": r.detail})
        if not r.passed:
            code = 1
    return records, code


def build_parser() -> argparse.ArgumentParser:
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--format", choices=("json", "csv", "tsv"), default="json")
    shared.add_argument("--seed", type=int, default=acceptance_mod.ACCEPTANCE_SEED)
    shared.add_argument("--budget", type=int, default=None,
                        help=f"iteration budget (env {ENV_BUDGET})")
    shared.add_argument("--slack-c", type=float, default=None,
                        help=f"slack constant C (env {ENV_SLACK_C})")
    shared.add_argument("--slack-exp", type=float, default=None,
                        help=f"slack exponent c in C*(log m)^c (env {ENV_SLACK_EXP})")
    shared.add_argument("--out", default=None, help="write the report to a file")

    parser = argparse.ArgumentParser(
        prog="primeprods",
        description="residue coverage by short prime products: exact desk-scale checks",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("admissibility", parents=[shared])
    p.add_argument("--case", choices=admissibility.CASES, default="k2")
    p.add_argument("--ell", type=int, default=3)
    p.add_argument("--alpha", type=float)
    p.add_argument("--beta", type=float, default=None)
    p.add_argument("--scan", action="store_true")
    p.add_argument("--alpha-min", type=float, default=0.5)
    p.add_argument("--alpha-max", type=float, default=1.0)
    p.add_argument("--beta-min", type=float, default=0.0)
    p.add_argument("--beta-max", type=float, default=1.0)
    p.add_argument("--step", type=float, default=0.05)
    p.add_argument("--table", action="store_true")
    p.set_defaults(handler=_cmd_admissibility)

    p = sub.add_parser("coverage", parents=[shared])
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--x", type=float, default=None)
    p.add_argument("--y", type=float, default=None)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--ell", type=int, default=1)
    p.add_argument("--allow-large", action="store_true")
    p.add_argument("--no-witnesses", action="store_true")
    p.set_defaults(handler=_cmd_coverage)

    p = sub.add_parser("expsum", parents=[shared])
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--check-direct", action="store_true")
    p.set_defaults(handler=_cmd_expsum)

    p = sub.add_parser("energy", parents=[shared])
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--x", type=float, required=True)
    p.set_defaults(handler=_cmd_energy)

    p = sub.add_parser("bilinear", parents=[shared])
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--count", type=int, default=1)
    p.set_defaults(handler=_cmd_bilinear)

    p = sub.add_parser("tk", parents=[shared])
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--y", type=float, required=True)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--m", type=int, required=True)
    p.set_defaults(handler=_cmd_tk)

    p = sub.add_parser("sieve", parents=[shared])
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--y", type=float, required=True)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--ell", type=int, default=None)
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--D", type=float, default=10.0)
    p.add_argument("--profile", action="store_true")
    p.set_defaults(handler=_cmd_sieve)

    p = sub.add_parser("level", parents=[shared])
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--epsilon", type=float, default=0.0)
    p.add_argument("--ell", type=int, default=2)
    p.set_defaults(handler=_cmd_level)

    p = sub.add_parser("reproduce-table", parents=[shared])
    p.set_defaults(handler=_cmd_reproduce_table)

    p = sub.add_parser("acceptance", parents=[shared])
    p.add_argument("--criteria", default=None,
                   help="comma-separated criterion numbers, e.g. 1,2,9")
    p.set_defaults(handler=_cmd_acceptance)

    return parser


def _apply_env_defaults(args) -> None:
    if args.budget is None:
        args.budget = int(os.environ.get(ENV_BUDGET, expsums.DIRECT_SUM_BUDGET))
    if args.slack_c is None:
        args.slack_c = float(os.environ.get(ENV_SLACK_C, 1.0))
    if args.slack_exp is None:
        args.slack_exp = float(os.environ.get(ENV_SLACK_EXP, 0.0))


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _apply_env_defaults(args)
    try:
        records, code = args.handler(args)
    except (ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if records:
        _emit(records, args)
    return code


if __name__ == "__main__":
    sys.exit(main())
