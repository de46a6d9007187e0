"""Orchestration of the modules for one configuration."""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

import mpmath

from . import engine as eng
from .config import Problem
from .equidegree import FEASIBLE, equidegreelize, equidegree_residual, rationalize
from .errors import IndeterminateSign, InputError
from .filtration import Filtration, common_adapted_basis, verify_adapted
from .incidence import Unsplittable, compute_m, split_stratum, strata
from .intersection import combine, power
from .largeness import FAIL, PASS, FPTable, cor2_check, surf_check, very_large_sum_check
from .rational import encode_number, format_rational, to_fraction
from .toy import MultidegreeDivisor, fP_table

ENV_WORKERS = "LARGEDIV_WORKERS"


def worker_count() -> int:
    try:
        return max(1, int(os.environ.get(ENV_WORKERS, "1")))
    except ValueError:
        return 1


def _map(fn, items):
    items = list(items)
    n = worker_count()
    if n == 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))


def integer_weights(weights) -> tuple:
    ws = [Fraction(w) for w in weights]
    lcm = math.lcm(*(w.denominator for w in ws))
    ints = [int(w * lcm) for w in ws]
    g = math.gcd(*ints)
    return tuple(x // g for x in ints)


def _report_dict(rep) -> dict:
    out = {
        "stratum": rep.stratum_id,
        "part": rep.part,
        "A": format_rational(rep.A),
        "B": format_rational(rep.B),
        "C": format_rational(rep.C),
        "case": rep.case,
        "criterion": rep.criterion,
        "margin": encode_number(rep.margin),
        "verdict": rep.verdict,
        "notes": list(rep.notes),
    }
    if rep.cubic is not None:
        out["cubic_margin"] = encode_number(rep.cubic)
    return out


def run_criteria(problem: Problem, weights) -> dict:
    """Asymptotic criteria with D = sum w_i D_i."""
    form, classes, cx = problem.form, problem.classes, problem.incidence
    m = compute_m(cx)
    D = combine(classes, weights)
    sts = strata(cx, classes, weights)
    nef_ok = [a and b for a, b in zip(problem.flags["nef"], problem.flags["effective"])]
    splits = [split_stratum(s, cx, classes, weights, form, D, m) for s in sts]
    section = {
        "weights": [format_rational(w) for w in weights],
        "D^q": format_rational(power(form, D)),
        "strata": [{"id": s.ident, "components": [problem.component_names[i] for i in s.indices]} for s in sts],
        "splits": [
            {"stratum": sp.stratum.ident, "unsplittable": True} if isinstance(sp, Unsplittable) else
            {"stratum": sp.stratum.ident,
             "part1": [problem.component_names[i] for i in sp.part1],
             "part2": [problem.component_names[i] for i in sp.part2]}
            for sp in splits
        ],
    }
    cor2 = cor2_check(form, D, sts, nef_flags=nef_ok)
    section["cor2"] = [_report_dict(r) for r in cor2]
    cor2_pass = all(r.verdict == PASS for r in cor2) and all(nef_ok)
    split_pass = False
    if not cx.has_common_components:
        cor22 = cor2_check(form, D, sts, splits=splits, nef_flags=nef_ok)
        section["cor22"] = [_report_dict(r) for r in cor22]
        split_pass = all(r.verdict == PASS for r in cor22) and all(nef_ok)
    surf_pass = False
    if form.q == 2 and not cx.has_common_components:
        try:
            surf = surf_check(form, D, splits, max_prec=problem.options["max_precision_bits"])
            section["surface"] = [_report_dict(r) for r in surf]
            surf_pass = all(r.verdict == PASS for r in surf) and power(form, D) > 0
        except IndeterminateSign as exc:
            section["surface_error"] = str(exc)
    asserted = problem.options["surface_error_term_asserted"]
    certified_by = []
    if cor2_pass:
        certified_by.append("D^q > 2q D^{q-1}.D_P on every stratum")
    if split_pass:
        certified_by.append("D^q > 2q D^{q-1}.D_{P,j} on every split part")
    if surf_pass and asserted:
        certified_by.append("surface three-case criterion (error-term hypothesis asserted)")
    section["surface_pass"] = surf_pass
    section["surface_error_term_asserted"] = asserted
    section["asymptotic_verdict"] = PASS if certified_by else FAIL
    section["certified_by"] = certified_by
    if certified_by:
        section["statement"] = "nD is very large for all sufficiently large n"
    if not all(nef_ok):
        section["notes"] = ["some components are not flagged nef and effective; asymptotic criteria are not certified"]
    return section


def exact_search(problem: Problem, int_weights, max_n: int) -> dict:
    """Smallest n <= max_n with nD very large by the exact sum criterion (unsplit or split)."""
    variety, cx = problem.variety, problem.incidence
    m = compute_m(cx)
    D = MultidegreeDivisor(variety, int_weights)
    sts = strata(cx, problem.classes, int_weights)

    def sub(indices):
        mult = [0] * len(int_weights)
        for i in indices:
            mult[i] = int_weights[i]
        return MultidegreeDivisor(variety, mult)

    splits = [] if cx.has_common_components else [split_stratum(s, cx, m=m) for s in sts]
    use_split = bool(splits) and not any(isinstance(sp, Unsplittable) for sp in splits)
    for n in range(1, max_n + 1):
        rows = dict(zip([s.ident for s in sts], _map(lambda s: fP_table(variety, D, sub(s.indices), n), sts)))
        single = very_large_sum_check(FPTable(n, rows))
        if all(v.verdict == PASS for v in single):
            return _exact_result(n, "single filtration", rows, single, D)
        if use_split:
            split_rows, verdicts = {}, []
            for sp in splits:
                for label, part in (("P1", sp.part1), ("P2", sp.part2)):
                    if not part:
                        continue
                    key = f"{sp.stratum.ident}/{label}"
                    split_rows[key] = fP_table(variety, D, sub(part), n)
            verdicts = very_large_sum_check(FPTable(n, split_rows))
            if all(v.verdict == PASS for v in verdicts):
                return _exact_result(n, "two filtrations", split_rows, verdicts, D)
    return {"verdict": FAIL, "max_n": max_n, "statement": f"no n <= {max_n} certified"}


def _exact_result(n, method, rows, verdicts, D):
    degree = tuple(n * d for d in D.multidegree)
    return {
        "verdict": PASS,
        "n": n,
        "method": method,
        "rows": {k: list(v) for k, v in sorted(rows.items())},
        "sums": {v.stratum_id: v.total for v in verdicts},
        "birational": all(d >= 1 for d in degree),
        "statement": f"very large at n={n}",
    }


def equidegree_section(problem: Problem, bias=None) -> tuple[dict, tuple | None]:
    opts = problem.options
    bias = opts["bias"] if bias is None else bias
    cert = equidegreelize(problem.form, problem.classes, bias=bias, tol=opts["tolerance"])
    out = {"status": cert.status, "bias": format_rational(cert.bias), "convex": cert.convex,
           "iterations": cert.iterations, "notes": list(cert.notes)}
    if cert.obstruction:
        out["obstruction"] = cert.obstruction
    if cert.divergence:
        out["divergence"] = cert.divergence
    if cert.weights is not None:
        out["weights"] = [mpmath.nstr(w, 20) for w in cert.weights.w]
        out["lambda"] = mpmath.nstr(cert.lam, 20)
        out["max_relative_residual"] = mpmath.nstr(cert.max_relative_residual, 6)
    if cert.status != FEASIBLE:
        return out, None
    out["exact_max_relative_residual"] = "{:.3e}".format(
        float(relative_residual(problem, [to_fraction(w) for w in cert.weights.w], bias)))
    iw = rationalize(cert.weights.w, opts["max_denominator"])
    out["integer_weights"] = list(iw.c)
    out["ratio_error"] = f"{iw.ratio_error:.3e}"
    int_res = relative_residual(problem, iw.c, bias)
    out["integer_max_relative_residual"] = format_rational(int_res)
    out["integer_within_bound"] = int_res <= 2 * Fraction(opts["tolerance"])
    if not out["integer_within_bound"]:
        out["notes"].append(f"integer weights miss the 2*tolerance residual bound; raise max_denominator "
                            f"above {opts['max_denominator']}")
    return out, iw.c


def relative_residual(problem: Problem, weights, bias) -> Fraction:
    res = equidegree_residual(problem.form, problem.classes, weights, bias)
    total = power(problem.form, combine(problem.classes, [to_fraction(w) for w in weights]))
    return max(abs(x) for x in res) / total if total else Fraction(0)


def engine_config(problem: Problem, very_large=None, birational=None, source=None) -> eng.Configuration:
    a = problem.arithmetic
    return eng.Configuration(
        q=problem.q, r=problem.r, m=compute_m(problem.incidence),
        effective=problem.flags["effective"], nef=problem.flags["nef"], ample=problem.flags["ample"],
        quasi_ample=problem.flags["quasi_ample"], kappa=problem.kappa,
        common_components=problem.incidence.has_common_components,
        s=a.get("s"), defined_over_base=a.get("defined_over_base"), d=a.get("d"), rho=a.get("rho"),
        pic0_rank=a.get("pic0_rank"), irregularity=a.get("irregularity"),
        intersection_dim=a.get("intersection_dim"),
        very_large=very_large, very_large_birational=birational, very_large_source=source,
        surf3a_inclusive=problem.options["surf3a_inclusive"],
    )


def verdict_dict(v: eng.Verdict) -> dict:
    out = {
        "conclusion": v.conclusion,
        "rule": v.rule_id,
        "citation": v.citation,
        "conjectural": v.conjectural,
        "analytic_twin": v.analytic_twin,
        "scope": v.scope,
        "degree": v.degree,
        "hypotheses": v.trace,
    }
    if v.exceptional_dim_bound is not None:
        out["exceptional_dim_bound"] = format_rational(v.exceptional_dim_bound)
    if v.notes:
        out["notes"] = list(v.notes)
    return out


def engine_section(result: eng.EngineResult) -> dict:
    return {
        "theorems": [verdict_dict(v) for v in result.theorems],
        "conjectures": [verdict_dict(v) for v in result.conjectures],
        "suppressed_conjectures": sorted(result.suppressed),
        "skipped": result.skipped,
        "sharpness_witnesses": [{"id": w.witness_id, "citation": w.citation, "description": w.description}
                                for w in result.witnesses],
    }


def largeness_section(problem: Problem, exact: bool = False, max_n: int | None = None) -> dict:
    """Criteria with declared weights; equidegree weights if requested or if those fail."""
    if problem.form is None or problem.classes is None:
        raise InputError("the largeness criteria need an intersection form and component classes")
    out = {"declared": run_criteria(problem, problem.weights)}
    mode = problem.options["equidegree"]
    best = out["declared"]
    ints = integer_weights(problem.weights)
    if mode is True or (mode == "auto" and best["asymptotic_verdict"] == FAIL):
        eq, eq_ints = equidegree_section(problem)
        out["equidegree"] = eq
        if eq_ints is not None and tuple(eq_ints) != ints:
            out["equidegree_weights"] = run_criteria(problem, [Fraction(c) for c in eq_ints])
            if out["equidegree_weights"]["asymptotic_verdict"] == PASS or best["asymptotic_verdict"] == FAIL:
                best = out["equidegree_weights"]
                ints = tuple(eq_ints)
    out["asymptotic_verdict"] = best["asymptotic_verdict"]
    out["chosen_weights"] = list(ints)
    if problem.variety is not None and exact:
        out["exact"] = exact_search(problem, ints, max_n or problem.options["max_n"])
    return out


def certification(section: dict | None):
    """(very_large, birational, source) derived from a largeness section."""
    if section is None:
        return None, None, None
    ex = section.get("exact")
    if ex and ex["verdict"] == PASS:
        return True, ex["birational"], f"exact sum criterion, {ex['method']}, n={ex['n']}"
    if section["asymptotic_verdict"] == PASS:
        return True, None, "asymptotic criterion"
    return None, None, None


def check(problem: Problem, exact: bool = True) -> dict:
    report = {
        "name": problem.name,
        "input": {
            "kind": problem.kind,
            "q": problem.q,
            "r": problem.r,
            "m": compute_m(problem.incidence),
            "components": list(problem.component_names),
            "common_components": problem.incidence.has_common_components,
            "seed": problem.options["seed"],
            "warnings": list(problem.warnings),
        },
        "incidence": {
            "maximal_meets": [[problem.component_names[i] for i in s] for s in problem.incidence.maximal()],
        },
    }
    section = None
    if problem.form is not None and problem.classes is not None:
        section = largeness_section(problem, exact=exact)
        report["largeness"] = section
    vl, bir, src = certification(section)
    if vl and bir is None and section is not None:
        quasi = any(problem.flags["quasi_ample"])
        bir = True if quasi else None
        if quasi:
            src += "; birational since a summand is quasi-ample"
    result = eng.run_engine(engine_config(problem, vl, bir, src))
    report["engine"] = engine_section(result)
    if problem.filtrations:
        report["filtration"] = filtration_section(problem.filtrations)
    report["summary"] = summary_line(result)
    report["exit_status"] = 0 if result.theorems else 1
    return report


def summary_line(result: eng.EngineResult) -> str:
    if result.theorems:
        v = result.theorems[0]
        return f"{v.conclusion} ({v.citation})"
    if result.conjectures:
        v = result.conjectures[0]
        return f"none from theorems; conjecturally {v.conclusion} ({v.citation})"
    return "none"


def filtration_from_matrices(d: int, matrices) -> Filtration:
    return Filtration.from_matrices(d, matrices)


def filtration_section(doc: dict) -> dict:
    d = doc["ambient_dim"]
    F1 = filtration_from_matrices(d, doc["first"])
    F2 = filtration_from_matrices(d, doc["second"])
    basis = common_adapted_basis(F1, F2)
    return {
        "ambient_dim": d,
        "basis": [[format_rational(x) for x in v] for v in basis.vectors],
        "tags": {k: [list(t) for t in v] for k, v in basis.tags.items()},
        "verified": verify_adapted(basis, F1) and verify_adapted(basis, F2),
    }
