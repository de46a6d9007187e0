"""Rule catalogue mapping configuration facts to cited conclusions.

Rules are plain data: an id, a citation, hypothesis predicates and a
conclusion. A hypothesis predicate returns (ok, detail) with ok in
{True, False, None}; None means the needed input was not supplied.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .errors import InconsistentConfig

NEG_INF = float("-inf")

# conclusion strength: level 3 = finiteness, 2 = finite off a proper closed subset, 1 = not Zariski-dense
LABELS = {
    (3, "absolute"): "Mordellic",
    (2, "absolute"): "quasi-Mordellic",
    (1, "absolute"): "no-dense-integral-points",
    (3, "fixed-S"): "all-finite",
    (2, "fixed-S"): "finite-outside-closed-subset",
    (1, "fixed-S"): "no-dense-integral-points-for-S",
}
TWINS = {3: "Brody hyperbolic", 2: "quasi-Brody hyperbolic", 1: "no Zariski-dense entire curve"}


def bracket(x) -> int:
    """Greatest integer in a nonnegative x."""
    return math.floor(x)


@dataclass(frozen=True)
class Configuration:
    q: int
    r: int
    m: int
    effective: tuple = None
    nef: tuple = None
    ample: tuple = None
    quasi_ample: tuple = None
    kappa: tuple = None
    common_components: bool = False
    s: int | None = None
    defined_over_base: tuple | None = None
    d: int | None = None
    rho: int | None = None
    pic0_rank: int | None = None
    irregularity: int | None = None
    intersection_dim: int | None = None
    very_large: bool | None = None
    very_large_birational: bool | None = None
    very_large_source: str | None = None
    surf3a_inclusive: bool = False

    def __post_init__(self):
        r = self.r
        defaults = {"effective": True, "nef": False, "ample": False, "quasi_ample": None}
        for name, dflt in defaults.items():
            val = getattr(self, name)
            if val is None:
                val = (dflt,) * r if dflt is not None else None
            object.__setattr__(self, name, None if val is None else tuple(bool(x) for x in val))
        if self.quasi_ample is None:
            qa = tuple(self.ample) if self.kappa is None else tuple(k == self.q for k in self.kappa)
            object.__setattr__(self, "quasi_ample", qa)
        if self.kappa is None:
            object.__setattr__(self, "kappa", tuple(self.q if qa else NEG_INF for qa in self.quasi_ample))
        else:
            object.__setattr__(self, "kappa", tuple(NEG_INF if k is None or k == NEG_INF else int(k)
                                                    for k in self.kappa))
        if self.defined_over_base is not None:
            object.__setattr__(self, "defined_over_base", tuple(bool(x) for x in self.defined_over_base))
        self.validate()

    def validate(self):
        if self.q < 1 or self.r < 1:
            raise InconsistentConfig("q and r must be positive")
        if not 1 <= self.m <= self.r:
            raise InconsistentConfig(f"m = {self.m} must satisfy 1 <= m <= r = {self.r}")
        for name in ("effective", "nef", "ample", "quasi_ample", "kappa"):
            if len(getattr(self, name)) != self.r:
                raise InconsistentConfig(f"{name} needs one entry per component")
        if self.defined_over_base is not None and len(self.defined_over_base) != self.r:
            raise InconsistentConfig("defined_over_base needs one entry per component")
        for i in range(self.r):
            k = self.kappa[i]
            if k != NEG_INF and not 0 <= k <= self.q:
                raise InconsistentConfig(f"component {i + 1}: kappa = {k} outside [0, q]")
            if self.ample[i] and not self.quasi_ample[i]:
                raise InconsistentConfig(f"component {i + 1} is ample but not quasi-ample")
            if self.quasi_ample[i] != (k == self.q):
                raise InconsistentConfig(f"component {i + 1}: quasi-ample must agree with kappa = q")
        if self.m == 1 and self.r > 1:
            for i in range(self.r):
                others = [j for j in range(self.r) if j != i and self.kappa[j] > 0]
                if self.kappa[i] >= 2 and others:
                    raise InconsistentConfig(
                        f"disjoint components with positive kappa must have kappa = 1, "
                        f"but component {i + 1} has kappa = {self.kappa[i]}")
        for name, low in (("s", 1), ("d", 1), ("rho", 1), ("pic0_rank", 0), ("irregularity", 0)):
            v = getattr(self, name)
            if v is not None and v < low:
                raise InconsistentConfig(f"{name} must be at least {low}")
        if self.intersection_dim is not None and not -1 <= self.intersection_dim < self.q:
            raise InconsistentConfig("intersection_dim must lie in [-1, q-1] (-1 for empty)")

    @property
    def kappa0(self):
        return min(self.kappa)

    def with_(self, **changes) -> "Configuration":
        data = {f: getattr(self, f) for f in self.__dataclass_fields__}
        data.update(changes)
        return Configuration(**data)


@dataclass(frozen=True)
class Hyp:
    text: str
    check: Callable  # config -> (ok, detail)


@dataclass(frozen=True)
class Rule:
    rule_id: str
    citation: str
    kind: str  # "theorem" or "conjecture"
    hyps: tuple
    level: int
    scope: str = "absolute"
    degree_d: bool = False
    twin: str | None = None
    bound: Callable | None = None  # config -> Fraction, predicted exceptional-set dimension bound
    note: str | None = None


@dataclass
class Verdict:
    conclusion: str
    level: int
    degree: int
    scope: str
    rule_id: str
    citation: str
    trace: list
    conjectural: bool
    analytic_twin: str | None = None
    exceptional_dim_bound: Fraction | None = None
    notes: list = field(default_factory=list)

    def implies(self, other: "Verdict") -> bool:
        return (self.level >= other.level and self.degree >= other.degree
                and (self.scope == "absolute" or other.scope == "fixed-S"))


# hypothesis builders ----------------------------------------------------------

def _fmt(x):
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return str(x)


def h_all(flag: str, text: str) -> Hyp:
    return Hyp(text, lambda c: (all(getattr(c, flag)), f"{sum(getattr(c, flag))}/{c.r} components"))


def h_kappa_pos() -> Hyp:
    return Hyp("kappa(D_i) > 0 for all i", lambda c: (c.kappa0 > 0, f"kappa0 = {c.kappa0}"))


def h_no_common() -> Hyp:
    return Hyp("no irreducible components in common", lambda c: (not c.common_components, ""))


def h_surface() -> Hyp:
    return Hyp("X is a surface (q = 2)", lambda c: (c.q == 2, f"q = {c.q}"))


def h_m_at_most(k: int) -> Hyp:
    return Hyp(f"m <= {k}", lambda c: (c.m <= k, f"m = {c.m}"))


def h_m_is_one() -> Hyp:
    return Hyp("m = 1 (components pairwise disjoint)", lambda c: (c.m == 1, f"m = {c.m}"))


def h_needs(name: str, text: str) -> Hyp:
    return Hyp(text, lambda c: (None, f"{name} not supplied") if getattr(c, name) is None else (True, f"{name} = {getattr(c, name)}"))


def h_s_is_one() -> Hyp:
    def check(c):
        if c.s is None:
            return None, "s not supplied"
        return c.s == 1, f"s = {c.s}"
    return Hyp("#S = 1", check)


def h_defined() -> Hyp:
    def check(c):
        if c.defined_over_base is None:
            return None, "defined_over_base not supplied"
        return all(c.defined_over_base), f"{sum(c.defined_over_base)}/{c.r} defined over k"
    return Hyp("every D_i defined over k", check)


def h_r_gt(text: str, threshold: Callable, strict: bool = True, needs=()) -> Hyp:
    def check(c):
        for name in needs:
            if getattr(c, name) is None:
                return None, f"{name} not supplied"
        try:
            t = threshold(c)
        except ZeroDivisionError:
            return False, "threshold undefined (kappa0 <= 0)"
        ok = c.r > t if strict else c.r >= t
        return ok, f"{c.r} {'>' if strict else '>='} {_fmt(t)}"
    return Hyp(text, check)


def h_count(text: str, pred: Callable, at_least: int) -> Hyp:
    def check(c):
        n = sum(1 for i in range(c.r) if pred(c, i))
        return n >= at_least, f"{n} such components"
    return Hyp(text, check)


def h_predicate(text: str, pred: Callable) -> Hyp:
    return Hyp(text, lambda c: (bool(pred(c)), ""))


def h_d_at_least_two() -> Hyp:
    def check(c):
        if c.d is None:
            return None, "d not supplied"
        return c.d >= 2, f"d = {c.d} (d = 1 is the degree-one statement)"
    return Hyp("point degree d >= 2", check)


QA = h_all("quasi_ample", "D_i quasi-ample for all i")
AMPLE = h_all("ample", "D_i ample for all i")


def _k0(c):
    if c.kappa0 <= 0:
        raise ZeroDivisionError("kappa0 is not positive")
    return Fraction(c.kappa0)


def _surf3a_hyp():
    def check(c):
        t = 4 * bracket(Fraction(c.m + 1, 2))
        if c.surf3a_inclusive:
            return c.r >= t, f"{c.r} >= {t}"
        return c.r > t, f"{c.r} > {t} (boundary r = {t} withheld)"
    return Hyp("r > 4[(m+1)/2]", check)


def _surf3b_hyp():
    def check(c):
        t = 2 * c.m if c.m % 2 == 0 else 2 * c.m + 1
        return c.r > t, f"{c.r} > {t} (m {'even' if c.m % 2 == 0 else 'odd'})"
    return Hyp("m even and r > 2m, or m odd and r > 2m+1", check)


# main-conjecture statements, reused verbatim as theorems when m = 1 -----------
MAIN_CONJECTURES = (
    dict(rule_id="conjmaina", citation="Conjecture conjmaina", level=1, twin="no Zariski-dense entire curve",
         hyps=(h_kappa_pos(), h_r_gt("r > m + m/kappa0", lambda c: c.m + Fraction(c.m) / _k0(c)))),
    dict(rule_id="conj1a", citation="Conjecture conj1a", level=1, twin="no Zariski-dense entire curve",
         hyps=(h_kappa_pos(), h_r_gt("r > 2m", lambda c: 2 * c.m))),
    dict(rule_id="conj1ab", citation="Conjecture conj1ab", level=2, twin="quasi-Brody hyperbolic",
         hyps=(QA, h_r_gt("r > m + m/q", lambda c: c.m + Fraction(c.m, c.q)))),
    dict(rule_id="conj2a(a)", citation="Conjecture conj2a(a)", level=2, twin="quasi-Brody hyperbolic",
         hyps=(AMPLE, h_r_gt("r > m + m/q", lambda c: c.m + Fraction(c.m, c.q))),
         bound=lambda c: Fraction(c.m, c.r - c.m)),
    dict(rule_id="conj2a(b)", citation="Conjecture conj2a(b)", level=3, twin="Brody hyperbolic",
         hyps=(AMPLE, h_r_gt("r > 2m", lambda c: 2 * c.m))),
)


def _theorems() -> tuple:
    rules = [
        Rule("cor4(a)", "Theorem cor4(a)", "theorem", (QA, h_r_gt("r > 2mq", lambda c: 2 * c.m * c.q)), 2,
             twin="quasi-Brody hyperbolic (Theorem cor4b(a))"),
        Rule("cor4(b)", "Theorem cor4(b)", "theorem", (AMPLE, h_r_gt("r > 2mq", lambda c: 2 * c.m * c.q)), 3,
             twin="complete hyperbolic, hyperbolically imbedded (Theorem cor4b(b))"),
        Rule("cor42", "Theorem cor42", "theorem",
             (QA, h_no_common(), h_r_gt("r > 2[(m+1)/2]q", lambda c: 2 * bracket(Fraction(c.m + 1, 2)) * c.q)), 2,
             twin="quasi-Brody hyperbolic (Theorem cor4b2)"),
        Rule("surf3a(a)", "Theorem surf3a(a)", "theorem", (h_surface(), h_no_common(), QA, _surf3a_hyp()), 2,
             twin="quasi-Brody hyperbolic (Theorem surf3b(a))"),
        Rule("surf3a(b)", "Theorem surf3a(b)", "theorem", (h_surface(), h_no_common(), AMPLE, _surf3b_hyp()), 3,
             twin="Brody hyperbolic (Theorem surf3b(b))"),
        Rule("surfcor4", "Corollary of Theorem surf4a (three quasi-ample, fourth with kappa > 0)", "theorem",
             (h_surface(), h_no_common(), h_m_at_most(2),
              h_count("at least 3 quasi-ample D_i", lambda c, i: c.quasi_ample[i], 3),
              h_count("at least 4 D_i with kappa > 0", lambda c, i: c.kappa[i] > 0, 4)), 2,
             twin="quasi-Brody hyperbolic", note="applied to a sub-sum of four components"),
        Rule("surfkappa", "Theorem on surfaces with kappa(D_i) > 0", "theorem",
             (h_surface(), h_no_common(), h_kappa_pos(),
              h_r_gt("r > 4[(m+1)/2]", lambda c: 4 * bracket(Fraction(c.m + 1, 2)))), 1,
             twin="no Zariski-dense entire curve"),
        Rule("surfsum(a)", "Surface theorem (a) of the results overview", "theorem",
             (h_surface(), h_no_common(), h_m_at_most(1), h_kappa_pos(), h_r_gt("r > 2", lambda c: 2)), 1,
             twin="no Zariski-dense entire curve"),
        Rule("surfsum(b)", "Surface theorem (b) of the results overview", "theorem",
             (h_surface(), h_no_common(), h_m_at_most(2), h_kappa_pos(), h_r_gt("r > 4", lambda c: 4)), 1,
             twin="no Zariski-dense entire curve"),
        Rule("surfsum(c)", "Surface theorem (c) of the results overview", "theorem",
             (h_surface(), h_no_common(), h_m_at_most(2), QA, h_r_gt("r > 3", lambda c: 3)), 2,
             twin="quasi-Brody hyperbolic"),
        Rule("surfsum(d)", "Surface theorem (d) of the results overview", "theorem",
             (h_surface(), h_no_common(), h_m_at_most(2), AMPLE, h_r_gt("r > 4", lambda c: 4)), 3,
             twin="Brody hyperbolic"),
        Rule("sthm(a)", "Theorem sthm(a)", "theorem",
             (h_defined(), QA, h_r_gt("r > ms", lambda c: c.m * c.s, needs=("s",))), 2, scope="fixed-S"),
        Rule("sthm(b)", "Theorem sthm(b)", "theorem",
             (h_defined(), AMPLE, h_r_gt("r > ms", lambda c: c.m * c.s, needs=("s",))), 3, scope="fixed-S"),
        Rule("qs1", "Corollary qs1", "theorem", (h_s_is_one(), h_defined(), AMPLE, h_r_gt("r > m", lambda c: c.m)),
             3, scope="fixed-S"),
        Rule("Pic", "Theorem Pic", "theorem",
             (h_s_is_one(), h_defined(), h_no_common(),
              h_r_gt("r > rho + n", lambda c: c.rho + c.pic0_rank, needs=("rho", "pic0_rank"))), 1, scope="fixed-S"),
        Rule("degd", "Theorem on degree-d points (r > 2d^2mq)", "theorem",
             (AMPLE, h_r_gt("r > 2d^2mq", lambda c: 2 * c.d * c.d * c.m * c.q, needs=("d",))), 3, degree_d=True),
        Rule("degdZ", "Theorem on degree-d points over Z (r > dm)", "theorem",
             (h_s_is_one(), h_defined(), AMPLE, h_r_gt("r > dm", lambda c: c.d * c.m, needs=("d",))), 3,
             scope="fixed-S", degree_d=True),
        Rule("Vojtaa", "Theorem Vojtaa", "theorem",
             (h_no_common(), h_r_gt("r > q - h^1(O_X) + rho", lambda c: c.q - c.irregularity + c.rho,
                                    needs=("irregularity", "rho"))), 2,
             twin="quasi-Brody hyperbolic (Theorem Vojtab)",
             note="components without common components contribute at least r irreducible components"),
        Rule("maina(large)", "Theorem maina", "theorem",
             (Hyp("a nonnegative integral combination of the D_i is certified very large",
                  lambda c: (None, "no certificate") if c.very_large is None
                  else (c.very_large, c.very_large_source or "")),), 1,
             twin="no Zariski-dense entire curve (Theorem mainb)"),
        Rule("maina(birational)", "Theorem maina", "theorem",
             (Hyp("a nonnegative integral combination of the D_i is certified very large",
                  lambda c: (None, "no certificate") if c.very_large is None
                  else (c.very_large, c.very_large_source or "")),
              Hyp("its map Phi is birational",
                  lambda c: (None, "birationality unknown") if c.very_large_birational is None
                  else (c.very_large_birational, ""))), 2,
             twin="quasi-Brody hyperbolic (Theorem mainb)"),
    ]
    for conj in MAIN_CONJECTURES:
        rules.append(Rule("tm1:" + conj["rule_id"], "Theorem tm1 (" + conj["citation"] + " with m = 1)", "theorem",
                          (h_m_is_one(),) + conj["hyps"], conj["level"], twin=conj["twin"], bound=conj.get("bound")))
    return tuple(rules)


def _conjectures() -> tuple:
    rules = [Rule(s["rule_id"], s["citation"], "conjecture", s["hyps"], s["level"], twin=s["twin"],
                  bound=s.get("bound")) for s in MAIN_CONJECTURES]
    d_needed = (h_d_at_least_two(),)
    rules += [
        Rule("congen", "Conjecture congen", "conjecture",
             d_needed + (h_kappa_pos(), h_r_gt("r > m + m(2d-1)/kappa0",
                                              lambda c: c.m + Fraction(c.m * (2 * c.d - 1)) / _k0(c), needs=("d",))),
             1, degree_d=True),
        Rule("congen-kappa", "General Siegel-type Conjecture, kappa(D_i) > 0 extreme", "conjecture",
             d_needed + (h_kappa_pos(), h_r_gt("r > 2dm", lambda c: 2 * c.d * c.m, needs=("d",))), 1, degree_d=True),
        Rule("congen-qa", "General Siegel-type Conjecture, quasi-ample extreme", "conjecture",
             d_needed + (QA, h_r_gt("r > m + m(2d-1)/q", lambda c: c.m + Fraction(c.m * (2 * c.d - 1), c.q),
                                    needs=("d",))), 2, degree_d=True),
        Rule("congen-ample(a)", "General Siegel-type Conjecture for Ample Divisors (a)", "conjecture",
             d_needed + (AMPLE, h_r_gt("r > m + m(2d-1)/q", lambda c: c.m + Fraction(c.m * (2 * c.d - 1), c.q),
                                       needs=("d",))), 2, degree_d=True,
             bound=lambda c: Fraction(c.m * (2 * c.d - 1), c.r - c.m)),
        Rule("congen-ample(b)", "General Siegel-type Conjecture for Ample Divisors (b)", "conjecture",
             d_needed + (AMPLE, h_r_gt("r > 2dm", lambda c: 2 * c.d * c.m, needs=("d",))), 3, degree_d=True),
        Rule("mainZ", "Main Siegel-type Conjecture over Z", "conjecture",
             (h_s_is_one(), h_defined(), h_kappa_pos(), h_r_gt("r > m", lambda c: c.m)), 1, scope="fixed-S"),
        Rule("mainZ-qa", "Main Siegel-type Conjecture over Z, quasi-ample form", "conjecture",
             (h_s_is_one(), h_defined(), QA, h_r_gt("r > m", lambda c: c.m)), 2, scope="fixed-S"),
        Rule("conjS(a)", "Conjecture conjS(a)", "conjecture",
             (h_s_is_one(), h_defined(), AMPLE, h_needs("intersection_dim", "dim of the common intersection known"),
              h_predicate("1 + dim(cap D_i) < q",
                          lambda c: c.intersection_dim is not None and 1 + c.intersection_dim < c.q)), 1, scope="fixed-S",
             bound=lambda c: Fraction(1 + c.intersection_dim)),  # evaluated only once fired
        Rule("conjS(b)", "Conjecture conjS(b)", "conjecture",
             (h_s_is_one(), h_defined(), AMPLE, h_no_common(), h_r_gt("r >= 2", lambda c: 1)), 1,
             scope="fixed-S"),
        Rule("GZ", "Conjecture GZ", "conjecture",
             d_needed + (h_s_is_one(), h_defined(), h_kappa_pos(),
                         h_r_gt("r > m + m(d-1)/kappa0", lambda c: c.m + Fraction(c.m * (c.d - 1)) / _k0(c),
                                needs=("d",))), 1, scope="fixed-S", degree_d=True),
        Rule("GZ-ample", "General Siegel-type Conjecture over Z for Ample Divisors", "conjecture",
             d_needed + (h_s_is_one(), h_defined(), AMPLE,
                         h_r_gt("r > m + m(d-1)/q", lambda c: c.m + Fraction(c.m * (c.d - 1), c.q), needs=("d",))),
             2, scope="fixed-S", degree_d=True, bound=lambda c: Fraction(c.m * (c.d - 1), c.r - c.m)),
    ]
    return tuple(rules)


THEOREMS = _theorems()
CONJECTURES = _conjectures()


def _label(level: int, scope: str, degree: int) -> str:
    base = LABELS[(level, scope)]
    return f"degree-{degree}-{base}" if degree > 1 else base


def evaluate_rule(rule: Rule, config: Configuration):
    """Return (status, trace): status is 'fired', 'failed' or 'missing'."""
    trace, status = [], "fired"
    for h in rule.hyps:
        ok, detail = h.check(config)
        trace.append({"hypothesis": h.text, "detail": detail,
                      "result": "ok" if ok else ("missing" if ok is None else "fail")})
        if ok is False:
            status = "failed"
        elif ok is None and status == "fired":
            status = "missing"
    return status, trace


def _verdict(rule: Rule, config: Configuration, trace) -> Verdict:
    degree = config.d if rule.degree_d else 1
    bound = rule.bound(config) if rule.bound else None
    notes = [rule.note] if rule.note else []
    twin = rule.twin if rule.twin else (TWINS[rule.level] if rule.scope == "absolute" else None)
    return Verdict(_label(rule.level, rule.scope, degree), rule.level, degree, rule.scope, rule.rule_id,
                   rule.citation, trace, rule.kind == "conjecture", twin, bound, notes)


def _sort(verdicts):
    return sorted(verdicts, key=lambda v: (v.conjectural, -v.level, v.scope != "absolute", -v.degree, v.rule_id))


def apply_theorems(config: Configuration, skipped: list | None = None) -> list[Verdict]:
    out = []
    for rule in THEOREMS:
        status, trace = evaluate_rule(rule, config)
        if status == "fired":
            out.append(_verdict(rule, config, trace))
        elif status == "missing" and skipped is not None:
            skipped.append({"rule": rule.rule_id, "reason": "missing data",
                            "detail": [t["detail"] for t in trace if t["result"] == "missing"]})
    return _sort(out)


def apply_conjectures(config: Configuration, skipped: list | None = None) -> list[Verdict]:
    out = []
    main_ids = {s["rule_id"] for s in MAIN_CONJECTURES}
    for rule in CONJECTURES:
        if config.m == 1 and rule.rule_id in main_ids:
            continue  # proven for m = 1; emitted by apply_theorems as tm1:<id>
        status, trace = evaluate_rule(rule, config)
        if status == "fired":
            v = _verdict(rule, config, trace)
            v.notes.append("CONJECTURAL")
            out.append(v)
        elif status == "missing" and skipped is not None:
            skipped.append({"rule": rule.rule_id, "reason": "missing data",
                            "detail": [t["detail"] for t in trace if t["result"] == "missing"]})
    return _sort(out)


@dataclass
class EngineResult:
    theorems: list
    conjectures: list
    suppressed: list
    skipped: list
    witnesses: list

    @property
    def strongest(self) -> Verdict | None:
        return self.theorems[0] if self.theorems else None


def run_engine(config: Configuration) -> EngineResult:
    skipped = []
    thms = apply_theorems(config, skipped)
    conjs = apply_conjectures(config, skipped)
    kept, suppressed = [], []
    for v in conjs:
        if any(t.implies(v) for t in thms):
            suppressed.append(v.rule_id)
        else:
            kept.append(v)
    return EngineResult(thms, kept, suppressed, skipped, sharpness_witness(config))


# sharpness witnesses ----------------------------------------------------------

@dataclass(frozen=True)
class Witness:
    witness_id: str
    citation: str
    description: str


def _all(seq):
    return seq is not None and all(seq)


WITNESSES = (
    (Witness("NHypera", "Example NHypera",
             "P^q minus its q+1 coordinate hyperplanes: points with unit coordinates are Zariski-dense "
             "when the ring of S-integers has infinitely many units"),
     lambda c: _all(c.ample) and c.m == c.q and c.r == c.q + 1 and not c.common_components),
    (Witness("var1a", "Example var1a",
             "products of copies of P^n with pulled-back coordinate hyperplanes: r = [m + m/kappa0] components "
             "with kappa = n still carry dense integral points, so r > m + m/kappa0 cannot be relaxed"),
     lambda c: c.kappa0 > 0 and all(k == c.kappa0 for k in c.kappa) and c.q % c.kappa0 == 0
     and c.m <= c.q and c.r == bracket(c.m + Fraction(c.m, c.kappa0))),
    (Witness("genex2", "Example genex2",
             "2dm hyperplanes on P^n whose m-fold intersections are collinear points: the line through them "
             "meets D in 2d points and carries infinite sets of degree-d integral points"),
     lambda c: c.d is not None and _all(c.ample) and c.r == 2 * c.d * c.m),
    (Witness("sharp-qs1", "Example after Corollary qs1",
             "on P^n over Q with S the infinite place, D = sum a_i {x_i = 0} with m = sum a_i: "
             "points with x_0 in Z and x_i = 1 form an infinite set of integral points"),
     lambda c: c.s == 1 and _all(c.defined_over_base) and _all(c.ample) and c.r == c.m),
    (Witness("Pell", "Remark after Corollary qs1",
             "P^1 over Q, S the infinite place, D = P + Q with P, Q conjugate over a real quadratic field: "
             "Pell's equation gives infinitely many integral points"),
     lambda c: c.s == 1 and c.q == 1 and c.r == 2 and c.defined_over_base is not None
     and not all(c.defined_over_base)),
)


def sharpness_witness(config: Configuration) -> list[Witness]:
    return [w for w, pred in WITNESSES if pred(config)]
