"""Asymptotic and exact very-largeness criteria."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import ArityError, ConclusionFailure, DomainError, InputError, PreconditionError
from .incidence import Split, Stratum, Unsplittable
from .intersection import DivisorClass, IntersectionForm, eval_form, mixed_power, power
from .rational import Surd, rational_sqrt, sign_of, to_fraction

PASS, FAIL = "Pass", "Fail"


def case_of(A) -> str:
    return "Positive" if A > 0 else ("Zero" if A == 0 else "Negative")


@dataclass
class StratumReport:
    stratum_id: str
    part: str | None
    A: Fraction
    B: Fraction
    C: Fraction
    case: str
    margin: object  # Fraction or Surd
    verdict: str
    criterion: str
    notes: list = field(default_factory=list)
    cubic: object = None


def _self_number(form: IntersectionForm, E: DivisorClass, D: DivisorClass) -> Fraction:
    """E^2.D^{q-2}, or E^q on curves."""
    if form.q == 1:
        return power(form, E)
    return eval_form(form, [E, E] + [D] * (form.q - 2))


def cor2_check(form: IntersectionForm, D: DivisorClass, strata: Sequence[Stratum],
               splits: Sequence | None = None, nef_flags: Sequence[bool] | None = None) -> list[StratumReport]:
    """D^q - 2q D^{q-1}.E > 0 for E = D_P, or for each split part when splits are given."""
    C = power(form, D)
    q = form.q
    notes = []
    if nef_flags is not None and not all(nef_flags):
        notes.append("not every component is flagged nef and effective; the criterion's hypothesis is unconfirmed")
    targets = []
    if splits is None:
        targets = [(s.ident, None, s.D_P) for s in strata]
    else:
        for sp in splits:
            if isinstance(sp, Unsplittable):
                targets.append((sp.stratum.ident, "unsplittable", None))
                continue
            for label, (part, cls_) in zip(("P1", "P2"), sp.parts):
                targets.append((sp.stratum.ident, label + ":" + ",".join(str(i + 1) for i in part), cls_))
    reports = []
    for ident, part, E in targets:
        if E is None:
            reports.append(StratumReport(ident, part, Fraction(0), Fraction(0), C, "Zero", Fraction(0), FAIL,
                                         "split-D^q", notes + ["no admissible split"]))
            continue
        B = mixed_power(form, D, E)
        A = _self_number(form, E, D)
        margin = C - 2 * q * B
        reports.append(StratumReport(ident, part, A, B, C, case_of(A), margin, PASS if margin > 0 else FAIL,
                                     "D^q" if splits is None else "split-D^q", list(notes)))
    return sorted(reports, key=lambda r: (r.stratum_id, r.part or ""))


def surf_inequality(a, c):
    """g(a, c) = 1 - 2ac + 3a + (3a - 1) sqrt(1 - ac); Fraction when exact, else Surd."""
    a, c = to_fraction(a), to_fraction(c)
    rad = 1 - a * c
    if rad < 0:
        raise DomainError(f"1 - ac = {rad} is negative")
    return Surd.make(1 - 2 * a * c + 3 * a, 3 * a - 1, rad)


def surf_expression(A, B, C):
    """B^2 - 2AC + 3AB + (3A - B) sqrt(B^2 - AC)."""
    A, B, C = map(to_fraction, (A, B, C))
    disc = B * B - A * C
    if disc < 0:
        raise DomainError(f"B^2 - AC = {disc} is negative")
    return Surd.make(B * B - 2 * A * C + 3 * A * B, 3 * A - B, disc)


def _radical(A, B, C):
    disc = B * B - A * C
    if disc < 0:
        raise DomainError(f"B^2 - AC = {disc} is negative")
    return Surd.sqrt(disc)


def cutoff_M(A, B, C, n=1):
    """Leading term of the cutoff M(n): (B - sqrt(B^2-AC))/A n, C/(2B) n, or "Unbounded"."""
    A, B, C, n = map(to_fraction, (A, B, C, n))
    if A != 0:
        return (-_radical(A, B, C) + B) / A * n
    if B != 0:
        return C / (2 * B) * n
    return "Unbounded"


def cubic_margin(A, B, C):
    """-(A/3)K^3 + (B/2)K^2 - C/2 with K = (B - sqrt(B^2-AC))/A."""
    A, B, C = map(to_fraction, (A, B, C))
    if A == 0:
        raise DomainError("cubic margin needs A != 0")
    K = cutoff_M(A, B, C, 1)
    K2 = K * K
    return -(K2 * K) * (A / 3) + K2 * (B / 2) - C / 2


def surf_case(A, B, C, max_prec=None):
    """Return (verdict, margin, case, notes) for one D_{P,j} on a surface."""
    A, B, C = map(to_fraction, (A, B, C))
    notes = []
    case = case_of(A)
    if A == 0:
        margin = C - 4 * B
        return (PASS if margin > 0 else FAIL), margin, case, notes
    expr = surf_expression(A, B, C)
    s = sign_of(expr, max_prec)
    if A > 0:
        verdict = PASS if s < 0 else FAIL
        margin = -expr
    else:
        verdict = PASS if s > 0 else FAIL
        margin = expr
    return verdict, margin, case, notes


def surf_check(form: IntersectionForm, D: DivisorClass, splits: Sequence, max_prec=None) -> list[StratumReport]:
    """Three-case surface criterion for every part of every split.

    The reported margin is positive exactly on Pass. The cubic margin is
    attached as a cross-check whenever A != 0.
    """
    if form.q != 2:
        raise ArityError("the surface criterion needs q = 2")
    C = power(form, D)
    reports = []
    for sp in splits:
        if isinstance(sp, Unsplittable):
            reports.append(StratumReport(sp.stratum.ident, "unsplittable", Fraction(0), Fraction(0), C, "Zero",
                                         Fraction(0), FAIL, "surface", [sp.reason]))
            continue
        for label, (part, E) in zip(("P1", "P2"), sp.parts):
            tag = label + ":" + ",".join(str(i + 1) for i in part)
            if E.is_zero():
                reports.append(StratumReport(sp.stratum.ident, tag, Fraction(0), Fraction(0), C, "Zero", C, PASS,
                                             "surface", ["empty part, passes trivially"]))
                continue
            A, B = eval_form(form, [E, E]), eval_form(form, [D, E])
            notes = []
            if C > 0 and B * B - A * C < 0:
                notes.append(f"B^2 - AC = {B * B - A * C} < 0 contradicts the Hodge index inequality; check the form")
                reports.append(StratumReport(sp.stratum.ident, tag, A, B, C, case_of(A), Fraction(0), FAIL,
                                             "surface", notes))
                continue
            verdict, margin, case, extra = surf_case(A, B, C, max_prec)
            notes += extra
            if C > 0:
                notes.append(f"B^2 - AC = {B * B - A * C}")
            cubic = None
            if A != 0:
                cubic = cubic_margin(A, B, C)
                if (sign_of(cubic, max_prec) > 0) != (verdict == PASS):
                    notes.append("cubic margin disagrees in sign with the surface clause")
            reports.append(StratumReport(sp.stratum.ident, tag, A, B, C, case, margin, verdict, "surface",
                                         notes, cubic))
    return sorted(reports, key=lambda r: (r.stratum_id, r.part or ""))


def cz_rearrange_check(x: Sequence, U: Sequence, R: int | None = None):
    """Given 0 <= x_j <= U_j (j <= R) and sum_{j<=R} U_j <= sum_{j<=h} x_j,
    verify sum_j j x_j >= sum_{j<=R} j U_j. Returns (holds, slack)."""
    x = [to_fraction(v) for v in x]
    U = [to_fraction(v) for v in U]
    h = len(x)
    R = len(U) if R is None else R
    if R > h or len(U) < R:
        raise PreconditionError(f"need R <= h and R bounds, got R={R}, h={h}, len(U)={len(U)}")
    if any(v < 0 for v in x):
        raise PreconditionError("x must be nonnegative")
    for j in range(R):
        if x[j] > U[j]:
            raise PreconditionError(f"x_{j + 1} = {x[j]} exceeds U_{j + 1} = {U[j]}")
    if sum(U[:R]) > sum(x):
        raise PreconditionError("sum of U exceeds sum of x")
    lhs = sum((j + 1) * v for j, v in enumerate(x))
    rhs = sum((j + 1) * v for j, v in enumerate(U[:R]))
    slack = lhs - rhs
    if slack < 0:
        raise ConclusionFailure(f"rearrangement inequality fails with slack {slack}")
    return True, slack


@dataclass(frozen=True)
class FPTable:
    n: int
    rows: dict  # stratum id -> list of f_P(m, n)


@dataclass(frozen=True)
class SumVerdict:
    stratum_id: str
    total: int
    verdict: str


def very_large_sum(row: Sequence[int], n: int) -> int:
    return sum((m - n) * f for m, f in enumerate(row))


def very_large_sum_check(table: FPTable) -> list[SumVerdict]:
    """Pass iff sum_m (m - n) f_P(m, n) > 0 for each stratum."""
    if table.n <= 0:
        raise InputError("the table must be for some n > 0")
    out = []
    for ident in sorted(table.rows):
        row = table.rows[ident]
        if any(f < 0 for f in row):
            raise InputError(f"negative entry in f_P row for {ident}")
        total = very_large_sum(row, table.n)
        out.append(SumVerdict(ident, total, PASS if total > 0 else FAIL))
    return out
