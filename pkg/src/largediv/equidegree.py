"""Equidegree weights: minimize (sum e^{a_i} D_i)^q on a hyperplane and certify.

The objective is expanded once, exactly, into an exponential sum
f(a) = sum_k c_k exp(e_k . a) over the multisets e_k of size q.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, gcd
from typing import Sequence

import mpmath
import numpy as np
from scipy.linalg import null_space
from scipy.optimize import linprog

from .errors import InputError, RationalizationOverflow
from .intersection import DivisorClass, IntersectionForm, combine, eval_form, mixed_power, power
from .linalg import left_nullspace
from .rational import format_rational, to_fraction

FEASIBLE, INFEASIBLE, MAX_ITERATIONS = "Feasible", "Infeasible", "MaxIterations"


def _multinomial(counts) -> int:
    out = factorial(sum(counts))
    for c in counts:
        out //= factorial(c)
    return out


@dataclass(frozen=True)
class ExpSum:
    """Exact exponential-sum form of D'^q and of each w_i D_i.D'^{q-1}."""

    r: int
    q: int
    exponents: tuple  # tuple of exponent tuples (length r, sum q)
    coeffs: tuple     # Fractions, aligned with exponents

    @classmethod
    def build(cls, form: IntersectionForm, components: Sequence[DivisorClass]):
        r, q = len(components), form.q
        exps, coeffs = [], []
        for combo in itertools.combinations_with_replacement(range(r), q):
            counts = [combo.count(i) for i in range(r)]
            value = eval_form(form, [components[i] for i in combo])
            if value != 0:
                exps.append(tuple(counts))
                coeffs.append(_multinomial(counts) * value)
        return cls(r, q, tuple(exps), tuple(coeffs))

    def gradient_polys(self) -> list[dict]:
        """g_i = (1/q) sum_k c_k e_{k,i} w^{e_k}, as dicts exponent -> coefficient."""
        polys = [dict() for _ in range(self.r)]
        for e, c in zip(self.exponents, self.coeffs):
            for i in range(self.r):
                if e[i]:
                    polys[i][e] = Fraction(e[i], self.q) * c
        return polys

    @property
    def convex(self) -> bool:
        return all(c >= 0 for c in self.coeffs)


@dataclass
class WeightVector:
    a: tuple  # mpf exponents
    w: tuple  # mpf weights

    def as_strings(self, digits=25):
        return [mpmath.nstr(x, digits) for x in self.w]


@dataclass
class EquidegreeCertificate:
    status: str
    weights: WeightVector | None = None
    lam: object = None
    residuals: tuple = ()
    max_relative_residual: object = None
    bias: Fraction = Fraction(0)
    iterations: int = 0
    convex: bool = False
    obstruction: dict | None = None
    divergence: dict | None = None
    objective_trace: tuple = ()
    notes: list = field(default_factory=list)


def _plane_normal(r: int, bias: Fraction) -> list[Fraction]:
    return [1 + bias] + [Fraction(1)] * (r - 1)


def equidegree_residual(form: IntersectionForm, components: Sequence[DivisorClass], weights, bias=0) -> list[Fraction]:
    """w_i D_i.D'^{q-1} - s_i D'^q/(r + bias), exactly, with s = (1 + bias, 1, ..., 1)."""
    ws = [to_fraction(w) for w in weights]
    if any(w <= 0 for w in ws):
        raise InputError("weights must be positive")
    bias = to_fraction(bias)
    r = len(components)
    Dp = combine(components, ws)
    total = power(form, Dp)
    s = _plane_normal(r, bias)
    return [w * mixed_power(form, Dp, Di) - si * total / (r + bias) for w, Di, si in zip(ws, components, s)]


def linear_obstruction(es: ExpSum, bias: Fraction):
    """Exact relation sum c_i g_i = 0 with c.s != 0 while some g (or D'^q) is positive on w > 0."""
    polys = es.gradient_polys()
    keys = sorted({k for p in polys for k in p})
    if not keys:
        return None
    rows = [[p.get(k, Fraction(0)) for k in keys] for p in polys]
    relations = left_nullspace(rows)
    s = _plane_normal(es.r, bias)
    positive = [i for i, p in enumerate(polys) if p and all(v >= 0 for v in p.values())]
    total_positive = es.coeffs and all(c >= 0 for c in es.coeffs)
    if not positive and not total_positive:
        return None
    for c in relations:
        cs = sum(ci * si for ci, si in zip(c, s))
        if cs != 0:
            denom = math.lcm(*(x.denominator for x in c))
            ints = [int(x * denom) for x in c]
            g = math.gcd(*ints)
            ints = [x // g for x in ints]
            if cs * denom / g < 0:
                ints = [-x for x in ints]
            def side(sel):
                terms = [f"{abs(x) if abs(x) != 1 else ''}w{i + 1}D{i + 1}.D'^(q-1)"
                         for i, x in enumerate(ints) if sel(x)]
                return " + ".join(terms) or "0"
            return {
                "relation": ints,
                "statement": f"{side(lambda x: x < 0)} = {side(lambda x: x > 0)} identically, forcing lambda = 0",
                "positive_component": (positive[0] + 1) if positive else None,
            }
    return None


def recession_witness(es: ExpSum, bias: Fraction):
    """Direction d in the constraint plane along which every term is non-increasing
    and some term strictly decreases; verified exactly after rationalizing."""
    if not es.convex or es.r < 2:
        return None
    E = np.array(es.exponents, dtype=float)
    s = np.array([float(x) for x in _plane_normal(es.r, bias)])
    A_ub = np.vstack([E, E.sum(axis=0, keepdims=True)])
    b_ub = np.concatenate([np.zeros(len(E)), [-1.0]])
    res = linprog(np.zeros(es.r), A_ub=A_ub, b_ub=b_ub, A_eq=s[None, :], b_eq=[0.0],
                  bounds=[(-10, 10)] * es.r, method="highs")
    if res.status != 0:
        return None
    d = [Fraction(x).limit_denominator(10 ** 6) for x in res.x]
    sv = _plane_normal(es.r, bias)
    d[-1] = -sum(si * di for si, di in zip(sv[:-1], d[:-1])) / sv[-1]
    dots = [sum(ei * di for ei, di in zip(e, d)) for e in es.exponents]
    if any(x > 0 for x in dots) or not any(x < 0 for x in dots):
        return None
    return {"direction": [format_rational(x) for x in d],
            "term_slopes": [format_rational(x) for x in dots]}


class _Objective:
    def __init__(self, es: ExpSum):
        self.E = np.array(es.exponents, dtype=float)
        self.c = np.array([float(x) for x in es.coeffs])
        self.q = es.q

    def parts(self, a):
        z = self.E @ a
        shift = z.max()
        t = self.c * np.exp(z - shift)
        f = t.sum()
        return shift, t, f

    def value(self, a) -> float:
        shift, _, f = self.parts(a)
        return f * math.exp(shift) if f > 0 else -math.inf if f < 0 else 0.0

    def log_derivs(self, a):
        shift, t, f = self.parts(a)
        if f <= 0:
            return None
        grad = (self.E.T @ t) / f
        hess = (self.E.T * t) @ self.E / f - np.outer(grad, grad)
        return math.log(f) + shift, grad, hess

    def rel_residual(self, a, s):
        """max_i |g_i/f - s_i/sum(s)| where g_i = (1/q) d f / d a_i."""
        out = self.log_derivs(a)
        if out is None:
            return math.inf
        _, grad, _ = out
        return float(np.max(np.abs(grad / self.q - s / s.sum())))


def _newton(obj: _Objective, s, tol, max_iter, radius):
    r = len(s)
    N = null_space(s[None, :])
    a = np.zeros(r)
    trace = [obj.value(a)]
    it = 0
    while it < max_iter:
        if obj.rel_residual(a, s) <= tol * 1e-3:
            break
        derivs = obj.log_derivs(a)
        if derivs is None:
            return a, it, trace, "objective is not positive at the current point"
        F, grad, hess = derivs
        g = N.T @ grad
        Hr = N.T @ hess @ N
        step, *_ = np.linalg.lstsq(Hr, -g, rcond=None)
        if not np.isfinite(step).all() or g @ step >= 0:
            step = -g
        t, fa = 1.0, trace[-1]
        while t > 1e-12:
            cand = a + t * (N @ step)
            fc = obj.value(cand)
            if fc < fa or (fc <= fa and t == 1.0):
                break
            t *= 0.5
        else:
            # objective changes fall below float64 resolution near the minimum; the polish finishes
            if obj.rel_residual(a, s) <= math.sqrt(tol):
                break
            return a, it, trace, "line search stalled"
        a = cand
        trace.append(fc)
        it += 1
        if np.linalg.norm(a) > radius:
            return a, it, trace, f"iterate left the ball of radius {radius}"
    return a, it, trace, None


def _polish(es: ExpSum, a0, s_frac, dps: int, steps: int = 8):
    """Newton on the stationarity system in mpmath at `dps` digits."""
    with mpmath.workdps(dps):
        r = es.r
        E = [[mpmath.mpf(x) for x in e] for e in es.exponents]
        c = [mpmath.mpf(x.numerator) / x.denominator for x in es.coeffs]
        s = [mpmath.mpf(x.numerator) / x.denominator for x in s_frac]
        ssum = sum(s)
        a = [mpmath.mpf(float(x)) for x in a0]
        # unknowns: a (r entries), constraint s.a = 0, equations g_i/f - s_i/ssum = 0 for i < r
        for _ in range(steps):
            terms = [ck * mpmath.exp(mpmath.fsum(ek[j] * a[j] for j in range(r))) for ck, ek in zip(c, E)]
            f = mpmath.fsum(terms)
            g = [mpmath.fsum(t * ek[i] for t, ek in zip(terms, E)) / es.q for i in range(r)]
            F = [g[i] / f - s[i] / ssum for i in range(r - 1)] + [mpmath.fsum(s[j] * a[j] for j in range(r))]
            J = mpmath.matrix(r, r)
            for i in range(r - 1):
                for j in range(r):
                    dg = mpmath.fsum(t * ek[i] * ek[j] for t, ek in zip(terms, E)) / es.q
                    df = mpmath.fsum(t * ek[j] for t, ek in zip(terms, E))
                    J[i, j] = (dg * f - g[i] * df) / (f * f)
            for j in range(r):
                J[r - 1, j] = s[j]
            try:
                delta = mpmath.lu_solve(J, mpmath.matrix([-x for x in F]))
            except ZeroDivisionError:
                break
            a = [a[j] + delta[j] for j in range(r)]
            if max(abs(x) for x in F) < mpmath.mpf(10) ** (-dps + 5):
                break
        w = [mpmath.exp(x) for x in a]
        terms = [ck * mpmath.exp(mpmath.fsum(ek[j] * a[j] for j in range(r))) for ck, ek in zip(c, E)]
        f = mpmath.fsum(terms)
        g = [mpmath.fsum(t * ek[i] for t, ek in zip(terms, E)) / es.q for i in range(r)]
        lam = f / ssum
        res = [g[i] - s[i] * lam for i in range(r)]
        rel = max(abs(x) for x in res) / f
        return a, w, lam, res, rel


def equidegreelize(form: IntersectionForm, components: Sequence[DivisorClass], bias=0, tol: float = 1e-9,
                   max_iter: int = 200, dps: int = 30, radius: float = 60.0) -> EquidegreeCertificate:
    """Search for positive weights with w_i D_i.D'^{q-1} = s_i lambda.

    Order of attempts: exact linear obstruction, exact recession direction
    (convex objectives only), then descent from a = 0.
    """
    bias = to_fraction(bias)
    if bias < 0:
        raise InputError("bias must be nonnegative")
    r = len(components)
    if r == 0:
        raise InputError("no components")
    es = ExpSum.build(form, components)
    cert = EquidegreeCertificate(MAX_ITERATIONS, bias=bias, convex=es.convex)
    if not es.coeffs:
        cert.status = INFEASIBLE
        cert.notes.append("D'^q vanishes identically")
        return cert
    obstruction = linear_obstruction(es, bias)
    if obstruction is not None:
        cert.status, cert.obstruction = INFEASIBLE, obstruction
        return cert
    witness = recession_witness(es, bias)
    if witness is not None:
        cert.status, cert.divergence = INFEASIBLE, witness
        cert.notes.append("the convex objective strictly decreases along an exact direction in the plane, so no minimum exists")
        return cert
    s_frac = _plane_normal(r, bias)
    s = np.array([float(x) for x in s_frac])
    obj = _Objective(es)
    a, it, trace, trouble = _newton(obj, s, tol, max_iter, radius)
    cert.iterations, cert.objective_trace = it, tuple(trace)
    if trouble:
        cert.notes.append(trouble)
        return cert
    a_mp, w, lam, res, rel = _polish(es, a, s_frac, dps)
    cert.weights = WeightVector(tuple(a_mp), tuple(w))
    cert.lam, cert.residuals, cert.max_relative_residual = lam, tuple(res), rel
    if rel <= tol and all(x > 0 for x in w):
        cert.status = FEASIBLE
        if es.convex:
            cert.notes.append("convex objective: this stationary point is a global minimum")
        else:
            cert.notes.append("stationary point reached from a = 0; other stationary points are not excluded")
    else:
        cert.notes.append(f"relative residual {mpmath.nstr(rel, 5)} above tolerance")
    return cert


@dataclass(frozen=True)
class IntegerWeights:
    c: tuple
    ratio_error: float


def _ratio_error(c, w) -> float:
    worst = 0.0
    for i in range(len(w)):
        for j in range(len(w)):
            worst = max(worst, abs(c[i] / c[j] - w[i] / w[j]))
    return worst


def rationalize(weights, max_denominator: int = 10 ** 6, max_ratio_error: float | None = None,
                chunk: int = 1 << 16) -> IntegerWeights:
    """Positive coprime integers c, all at most `max_denominator`, whose ratios
    approximate those of `weights`.

    Exact rational inputs whose ratios share a small enough denominator come
    back exactly. Otherwise every common scale L <= max_denominator for the
    largest weight is tried, c_i = round(L w_i / w_max); the few best scales by
    worst absolute deviation are then ranked by the pairwise ratio error.
    """
    ws = [to_fraction(w) for w in weights]
    if not ws or any(w <= 0 for w in ws):
        raise InputError("weights must be positive")
    if max_denominator < 1:
        raise InputError("max_denominator must be positive")
    big = max(ws)
    ratios = [w / big for w in ws]
    wf = [float(w) for w in ws]
    L = math.lcm(*(x.denominator for x in ratios))
    if L <= max_denominator:
        ints = [int(x * L) for x in ratios]
        g = gcd(*ints)
        best = IntegerWeights(tuple(x // g for x in ints), 0.0)
    else:
        x = np.array([float(v) for v in ratios])
        shortlist = []
        for lo in range(1, max_denominator + 1, chunk):
            scales = np.arange(lo, min(lo + chunk, max_denominator + 1), dtype=float)
            dev = np.abs(np.outer(scales, x) - np.rint(np.outer(scales, x))).max(axis=1) / scales
            top = np.argsort(dev, kind="stable")[:8]
            shortlist += [(dev[i], int(scales[i])) for i in top]
        best = None
        for _, scale in sorted(shortlist)[:32]:
            ints = [max(1, int(round(scale * v))) for v in x]
            g = gcd(*ints)
            ints = tuple(c // g for c in ints)
            err = _ratio_error(ints, wf)
            if best is None or err < best.ratio_error:
                best = IntegerWeights(ints, err)
    if max_ratio_error is not None and best.ratio_error > max_ratio_error:
        raise RationalizationOverflow(
            f"best ratio error {best.ratio_error:.3g} exceeds {max_ratio_error:.3g} within denominator {max_denominator}")
    return best
