"""Machine-readable and plain-text rendering of reports."""

from __future__ import annotations

import json


def to_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _margin(m) -> str:
    if isinstance(m, dict):
        lo, hi = m["interval"]
        return f"{m['exact']} in [{lo}, {hi}]"
    return str(m)


def _criteria_lines(title, rows, limit=8):
    lines = [f"  {title}:"]
    if len(rows) > limit:
        groups: dict = {}
        for r in rows:
            key = (r["A"], r["B"], r["C"], _margin(r["margin"]), r["verdict"], tuple(r.get("notes", [])))
            groups.setdefault(key, []).append(r["stratum"] + (f" {r['part']}" if r.get("part") else ""))
        for (A, B, C, margin, verdict, notes), ids in groups.items():
            lines.append(f"    {len(ids)} rows like {ids[0]}: A={A} B={B} C={C} margin={margin} -> {verdict}")
            lines += [f"      note: {n}" for n in notes]
        return lines
    for r in rows:
        part = f" {r['part']}" if r.get("part") else ""
        lines.append(f"    {r['stratum']}{part}: A={r['A']} B={r['B']} C={r['C']} margin={_margin(r['margin'])} "
                     f"-> {r['verdict']}")
        for note in r.get("notes", []):
            lines.append(f"      note: {note}")
    return lines


def _largeness_lines(sec: dict) -> list[str]:
    lines = []
    for key, title in (("declared", "declared weights"), ("equidegree_weights", "equidegree weights")):
        if key not in sec:
            continue
        crit = sec[key]
        lines.append(f"criteria with {title} {crit['weights']} (D^q = {crit['D^q']}):")
        lines += _criteria_lines("D^q > 2q D^(q-1).D_P", crit["cor2"])
        if "cor22" in crit:
            lines += _criteria_lines("split parts", crit["cor22"])
        if "surface" in crit:
            lines += _criteria_lines("surface criterion", crit["surface"])
        lines.append(f"  asymptotic: {crit['asymptotic_verdict']}"
                     + (f" ({'; '.join(crit['certified_by'])})" if crit["certified_by"] else ""))
    if "equidegree" in sec:
        lines += equidegree_lines(sec["equidegree"])
    if "exact" in sec:
        ex = sec["exact"]
        lines.append(f"exact oracle: {ex['statement']}" + (f" ({ex['method']})" if ex["verdict"] == "Pass" else ""))
        for k, row in ex.get("rows", {}).items():
            lines.append(f"  f_P row {k}: {row}  sum={ex['sums'][k]}")
    return lines


def equidegree_lines(eq: dict) -> list[str]:
    lines = [f"equidegree: {eq['status']} (bias {eq['bias']}, convex={eq['convex']})"]
    if "obstruction" in eq:
        lines.append(f"  linear obstruction: {eq['obstruction']['statement']}")
    if "divergence" in eq:
        lines.append(f"  descent direction: {eq['divergence']['direction']}")
    if "weights" in eq:
        lines.append(f"  weights: {eq['weights']}  lambda={eq['lambda']}  residual={eq['max_relative_residual']}")
    if "integer_weights" in eq:
        lines.append(f"  integer weights: {eq['integer_weights']} (ratio error {eq['ratio_error']})")
    for note in eq.get("notes", []):
        lines.append(f"  note: {note}")
    return lines


def engine_lines(sec: dict) -> list[str]:
    lines = ["theorems:"]
    if not sec["theorems"]:
        lines.append("  none")
    for v in sec["theorems"]:
        lines.append(f"  {v['conclusion']} ({v['citation']})")
        for h in v["hypotheses"]:
            lines.append(f"    [{h['result']}] {h['hypothesis']}" + (f": {h['detail']}" if h["detail"] else ""))
    lines.append("conjectural:")
    if not sec["conjectures"]:
        lines.append("  none")
    for v in sec["conjectures"]:
        bound = f", dim Exc <= {v['exceptional_dim_bound']}" if "exceptional_dim_bound" in v else ""
        lines.append(f"  CONJECTURAL {v['conclusion']} ({v['citation']}{bound})")
    if sec["suppressed_conjectures"]:
        lines.append(f"  suppressed (implied by theorems): {', '.join(sec['suppressed_conjectures'])}")
    for w in sec["sharpness_witnesses"]:
        lines.append(f"sharpness witness {w['id']} ({w['citation']}): {w['description']}")
    return lines


def to_text(report: dict) -> str:
    inp = report["input"]
    lines = [f"configuration {report.get('name') or '(unnamed)'}: {inp['kind']} variety, q={inp['q']}, "
             f"r={inp['r']}, m={inp['m']}, seed={inp['seed']}"]
    for w in inp.get("warnings", []):
        lines.append(f"warning: {w}")
    if "largeness" in report:
        lines += _largeness_lines(report["largeness"])
    if "engine" in report:
        lines += engine_lines(report["engine"])
    if "filtration" in report:
        f = report["filtration"]
        lines.append(f"filtration demo: verified={f['verified']}")
    lines.append(f"summary: {report['summary']}")
    return "\n".join(lines) + "\n"
