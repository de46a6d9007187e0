"""Command-line front end."""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import pipeline
from .config import load_problem, read_json, validate_document
from .errors import InputError, LargedivError
from .filtration import Filtration, common_adapted_basis, verify_adapted
from .largeness import FPTable, very_large_sum_check
from .rational import format_rational, to_fraction
from .report import _largeness_lines, engine_lines, equidegree_lines, to_json, to_text
from .toy import MultidegreeDivisor, fP_table, h0
from .incidence import strata

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT = 0, 1, 2


def _common(p):
    p.add_argument("config", help="configuration document (JSON)")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--output", help="write the report here instead of stdout")
    p.add_argument("--tolerance", type=float)
    p.add_argument("--max-n", type=int)
    p.add_argument("--max-denominator", type=int)
    p.add_argument("--bias", type=str, help="rational bias epsilon on the first component")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="largediv", description="Certify large-divisor criteria and theorem thresholds.")
    sub = parser.add_subparsers(dest="command", required=True)
    _common(sub.add_parser("check", help="run every stage"))
    _common(sub.add_parser("equidegree", help="equidegree weights or an infeasibility certificate"))
    p = sub.add_parser("largeness", help="asymptotic criteria, optionally the exact oracle")
    _common(p)
    p.add_argument("--exact", action="store_true", help="search n <= max-n with the exact oracle")
    p = sub.add_parser("oracle", help="exact h0 and f_P tables on toy varieties")
    _common(p)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--h0", metavar="D1,D2,...", help="multidegree")
    group.add_argument("--fp-table", type=int, metavar="N", help="f_P(m, N) rows for every stratum")
    _common(sub.add_parser("engine", help="theorem and conjecture verdicts"))
    p = sub.add_parser("filtration", help="common adapted basis of two chains")
    p.add_argument("chains", nargs=2, help="two chain files")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--output")
    return parser


def _load(args):
    problem = load_problem(args.config)
    opts = problem.options
    if args.tolerance is not None:
        opts["tolerance"] = args.tolerance
    if args.max_n is not None:
        opts["max_n"] = args.max_n
    if args.max_denominator is not None:
        opts["max_denominator"] = args.max_denominator
    if args.bias is not None:
        try:
            opts["bias"] = to_fraction(args.bias)
        except ValueError as exc:
            raise InputError(f"--bias: {exc}") from None
    return problem


def _emit(args, report: dict, text: str):
    out = to_json(report) if args.format == "json" else text
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)


def cmd_check(args):
    report = pipeline.check(_load(args))
    _emit(args, report, to_text(report))
    return report["exit_status"]


def cmd_engine(args):
    problem = _load(args)
    result = pipeline.eng.run_engine(pipeline.engine_config(problem))
    sec = pipeline.engine_section(result)
    report = {"engine": sec, "summary": pipeline.summary_line(result), "exit_status": 0 if result.theorems else 1}
    _emit(args, report, "\n".join(engine_lines(sec) + [f"summary: {report['summary']}"]) + "\n")
    return report["exit_status"]


def cmd_equidegree(args):
    problem = _load(args)
    if problem.form is None or problem.classes is None:
        raise InputError("equidegree needs an intersection form and component classes")
    sec, _ = pipeline.equidegree_section(problem)
    report = {"equidegree": sec, "exit_status": 0 if sec["status"] == "Feasible" else 1}
    _emit(args, report, "\n".join(equidegree_lines(sec)) + "\n")
    return report["exit_status"]


def cmd_largeness(args):
    problem = _load(args)
    if args.exact and problem.variety is None:
        raise InputError("--exact needs a toy variety")
    sec = pipeline.largeness_section(problem, exact=args.exact)
    exact_ok = sec.get("exact", {}).get("verdict") == "Pass"
    report = {"largeness": sec, "exit_status": 0 if exact_ok or sec["asymptotic_verdict"] == "Pass" else 1}
    _emit(args, report, "\n".join(_largeness_lines(sec)) + "\n")
    return report["exit_status"]


def cmd_oracle(args):
    problem = _load(args)
    v = problem.variety
    if v is None:
        raise InputError("the oracle needs a toy variety")
    if args.h0 is not None:
        try:
            degs = tuple(int(x) for x in args.h0.split(","))
        except ValueError:
            raise InputError(f"--h0 expects comma-separated integers, got {args.h0!r}") from None
        value = h0(v, degs)
        _emit(args, {"h0": value, "multidegree": list(degs)}, f"{value}\n")
        return EXIT_OK
    n = args.fp_table
    if n < 1:
        raise InputError("--fp-table needs n >= 1")
    ints = pipeline.integer_weights(problem.weights)
    D = MultidegreeDivisor(v, ints)
    rows = {}
    for s in strata(problem.incidence, problem.classes, ints):
        mult = [ints[i] if i in s.indices else 0 for i in range(len(ints))]
        rows[s.ident] = fP_table(v, D, MultidegreeDivisor(v, mult), n)
    verdicts = very_large_sum_check(FPTable(n, rows))
    report = {"n": n, "rows": rows, "sums": {x.stratum_id: x.total for x in verdicts},
              "verdicts": {x.stratum_id: x.verdict for x in verdicts}}
    text = "\n".join(f"{k}: {rows[k]} sum={report['sums'][k]} {report['verdicts'][k]}" for k in sorted(rows)) + "\n"
    _emit(args, report, text)
    return EXIT_OK


def _chain(path) -> Filtration:
    doc = read_json(path)
    validate_document(doc, "chain.schema.json")
    return Filtration.from_matrices(doc["ambient_dim"], doc["chain"])


def cmd_filtration(args):
    F1, F2 = (_chain(p) for p in args.chains)
    basis = common_adapted_basis(F1, F2)
    ok = verify_adapted(basis, F1) and verify_adapted(basis, F2)
    vectors = [[format_rational(x) for x in v] for v in basis.vectors]
    report = {"basis": vectors, "tags": {k: [list(t) for t in v] for k, v in basis.tags.items()}, "verified": ok}
    lines = [f"v{i + 1} = ({', '.join(v)})" for i, v in enumerate(vectors)]
    for label, tags in basis.tags.items():
        for j, t in enumerate(tags):
            lines.append(f"{label} W{j + 1}: " + (", ".join(f"v{i + 1}" for i in t) or "(zero)"))
    lines.append(f"verified: {ok}")
    _emit(args, report, "\n".join(lines) + "\n")
    return EXIT_OK if ok else EXIT_NEGATIVE


COMMANDS = {
    "check": cmd_check, "engine": cmd_engine, "equidegree": cmd_equidegree,
    "largeness": cmd_largeness, "oracle": cmd_oracle, "filtration": cmd_filtration,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except LargedivError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
