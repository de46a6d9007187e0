"""Exact oracle on products of projective spaces with hyperplane components.

A component is the pullback of a hyperplane {sum_i a_i x_i = 0} from one
factor P^{n_j}; on a P^1 factor this is a point, which gives the curve model.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Mapping, Sequence

from .errors import InputError, UnknownGeneratorError
from .incidence import IncidenceComplex
from .intersection import DivisorClass, GeneratorBasis, IntersectionForm
from .linalg import Subspace, rank


@dataclass(frozen=True)
class ToyComponent:
    name: str
    factor: int  # 0-based factor index
    coeffs: tuple  # linear form on that factor's homogeneous coordinates

    def coordinate_index(self):
        """Index i if the component is the coordinate hyperplane x_i = 0, else None."""
        nz = [i for i, c in enumerate(self.coeffs) if c != 0]
        return nz[0] if len(nz) == 1 else None


@dataclass(frozen=True)
class ToyVariety:
    factors: tuple
    components: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(int(n) for n in self.factors))
        object.__setattr__(self, "components", tuple(self.components))
        if not self.factors or any(n < 1 for n in self.factors):
            raise InputError(f"factor dimensions must be positive, got {self.factors}")
        names = [c.name for c in self.components]
        if len(set(names)) != len(names):
            raise InputError("component names must be unique")
        for c in self.components:
            if not 0 <= c.factor < len(self.factors):
                raise InputError(f"component {c.name} refers to factor {c.factor + 1} of {len(self.factors)}")
            if len(c.coeffs) != self.factors[c.factor] + 1:
                raise InputError(f"component {c.name} needs {self.factors[c.factor] + 1} coefficients")
            if all(x == 0 for x in c.coeffs):
                raise InputError(f"component {c.name} has an identically zero equation")

    # constructors -----------------------------------------------------------
    @classmethod
    def projective(cls, n: int, hyperplanes: Sequence[Sequence[int]], prefix="D"):
        comps = [ToyComponent(f"{prefix}{i + 1}", 0, tuple(h)) for i, h in enumerate(hyperplanes)]
        return cls((n,), comps)

    @classmethod
    def general_hyperplanes(cls, n: int, r: int, prefix="D"):
        """r hyperplanes of P^n in general position (Vandermonde rows)."""
        return cls.projective(n, [[t ** e for e in range(n + 1)] for t in range(1, r + 1)], prefix)

    @classmethod
    def coordinate_hyperplanes(cls, n: int, prefix="D"):
        return cls.projective(n, [[1 if i == j else 0 for j in range(n + 1)] for i in range(n + 1)], prefix)

    @classmethod
    def points_on_line(cls, k: int, prefix="P"):
        """k distinct points 0, 1, ..., k-1 on P^1, the point t being x0 - t*x1 = 0."""
        return cls.projective(1, [[1, -t] for t in range(k)], prefix)

    # basic data -------------------------------------------------------------
    @property
    def q(self) -> int:
        return sum(self.factors)

    @property
    def names(self) -> tuple:
        return tuple(c.name for c in self.components)

    def hyperplane_names(self) -> tuple:
        return tuple(f"H{j + 1}" for j in range(len(self.factors)))

    def component(self, name) -> ToyComponent:
        for c in self.components:
            if c.name == name:
                return c
        raise UnknownGeneratorError(f"unknown component {name!r}")

    def component_class(self, name) -> DivisorClass:
        return DivisorClass.of(f"H{self.component(name).factor + 1}")

    def component_classes(self) -> list:
        return [self.component_class(c.name) for c in self.components]

    def kappa(self, name) -> int:
        return self.factors[self.component(name).factor]

    def default_flags(self, name) -> dict:
        k = self.kappa(name)
        single = len(self.factors) == 1
        return {"effective": True, "nef": True, "ample": single, "quasi_ample": k == self.q, "kappa": k}


@dataclass(frozen=True)
class MultidegreeDivisor:
    """Nonnegative integer multiplicities on the components of a toy variety."""

    variety: ToyVariety
    mult: tuple

    def __post_init__(self):
        object.__setattr__(self, "mult", tuple(int(x) for x in self.mult))
        if len(self.mult) != len(self.variety.components):
            raise InputError("one multiplicity per component required")
        if any(x < 0 for x in self.mult):
            raise InputError("multiplicities must be nonnegative")

    @classmethod
    def from_mapping(cls, variety, mult: Mapping):
        return cls(variety, tuple(int(mult.get(c.name, 0)) for c in variety.components))

    @property
    def multidegree(self) -> tuple:
        deg = [0] * len(self.variety.factors)
        for c, k in zip(self.variety.components, self.mult):
            deg[c.factor] += k
        return tuple(deg)

    def is_zero(self) -> bool:
        return not any(self.mult)

    def __mul__(self, k: int):
        return MultidegreeDivisor(self.variety, tuple(k * x for x in self.mult))

    __rmul__ = __mul__

    def __add__(self, other):
        return MultidegreeDivisor(self.variety, tuple(a + b for a, b in zip(self.mult, other.mult)))


def h0(variety: ToyVariety, multidegree: Sequence[int]) -> int:
    degs = tuple(multidegree)
    if len(degs) != len(variety.factors):
        raise InputError(f"multidegree needs {len(variety.factors)} entries, got {len(degs)}")
    if any(d < 0 for d in degs):
        return 0
    out = 1
    for n, d in zip(variety.factors, degs):
        out *= comb(n + d, n)
    return out


def _shift(deg, step, m):
    return tuple(a - m * b for a, b in zip(deg, step))


def fP_table(variety: ToyVariety, D: MultidegreeDivisor, D_P: MultidegreeDivisor, n: int) -> list[int]:
    """f_P(m, n) = l(nD - mD_P) - l(nD - (m+1)D_P) for m = 0, 1, ... until both vanish."""
    if n < 1:
        raise InputError("n must be positive")
    if D_P.is_zero():
        return []
    base, step = tuple(n * d for d in D.multidegree), D_P.multidegree
    row = []
    m = 0
    cur = h0(variety, base)
    while cur > 0:
        nxt = h0(variety, _shift(base, step, m + 1))
        row.append(cur - nxt)
        cur = nxt
        m += 1
    while row and row[-1] == 0:
        row.pop()
    return row


def intersection_form_of(variety: ToyVariety) -> IntersectionForm:
    """Product of hyperplane classes is 1 exactly when H_j appears n_j times."""
    names = variety.hyperplane_names()
    key = tuple(h for h, n in zip(names, variety.factors) for _ in range(n))
    return IntersectionForm(GeneratorBasis(names, variety.q), {key: 1}, nef=frozenset(names))


def _proportional(u, v) -> bool:
    return rank([u, v]) == 1


def incidence_of(variety: ToyVariety) -> IncidenceComplex:
    """Meeting sets from per-factor ranks: a set meets iff on every factor the
    linear forms involved have rank at most n_j."""
    comps = variety.components
    r = len(comps)

    def meets(idx):
        for j, n in enumerate(variety.factors):
            rows = [comps[i].coeffs for i in idx if comps[i].factor == j]
            if rows and rank(rows) > n:
                return False
        return True

    found = {frozenset((i,)) for i in range(r)}
    frontier = sorted(found, key=sorted)
    while frontier:
        nxt = set()
        for s in frontier:
            for i in range(max(s) + 1, r):
                t = s | {i}
                if t not in found and meets(sorted(t)):
                    nxt.add(t)
        found |= nxt
        frontier = sorted(nxt, key=sorted)
    common = [
        (a, b)
        for a, b in itertools.combinations(range(r), 2)
        if comps[a].factor == comps[b].factor and _proportional(comps[a].coeffs, comps[b].coeffs)
    ]
    return IncidenceComplex(r, frozenset(found), frozenset(frozenset(p) for p in common))


def monomial_order(variety: ToyVariety, monomial: Sequence[Sequence[int]], component: str,
                   pole_divisor: MultidegreeDivisor | None = None) -> int:
    """Order of vanishing of a monomial section along a coordinate-hyperplane component.

    `monomial` holds one exponent vector per factor. A section s of O(d) is
    read as the rational function s/F, F the equation of `pole_divisor`; the
    order is then the exponent minus the pole multiplicity of the component.
    Non-coordinate components do not divide any monomial, so the raw order is 0.
    """
    comp = variety.component(component)
    exps = monomial[comp.factor]
    if len(exps) != variety.factors[comp.factor] + 1:
        raise InputError("monomial exponent vector has the wrong length")
    idx = comp.coordinate_index()
    order = exps[idx] if idx is not None else 0
    if pole_divisor is not None:
        order -= pole_divisor.mult[variety.components.index(comp)]
    return order


# sections and filtrations -----------------------------------------------------

def monomials(variety: ToyVariety, multidegree: Sequence[int]) -> list[tuple]:
    """Monomial basis of H^0(O(d)); each monomial is a tuple of per-factor exponent tuples."""
    if any(d < 0 for d in multidegree):
        return []
    per_factor = []
    for n, d in zip(variety.factors, multidegree):
        per_factor.append(sorted(
            (e for e in itertools.product(range(d + 1), repeat=n + 1) if sum(e) == d), reverse=True))
    return [tuple(m) for m in itertools.product(*per_factor)]


def _poly_mul(p: dict, q: dict) -> dict:
    out = {}
    for a, x in p.items():
        for b, y in q.items():
            key = tuple(tuple(u + v for u, v in zip(fa, fb)) for fa, fb in zip(a, b))
            out[key] = out.get(key, 0) + x * y
    return {k: v for k, v in out.items() if v != 0}


def _linear_poly(variety: ToyVariety, comp: ToyComponent) -> dict:
    out = {}
    for i, c in enumerate(comp.coeffs):
        if c:
            key = tuple(
                tuple(1 if (j == comp.factor and t == i) else 0 for t in range(n + 1))
                for j, n in enumerate(variety.factors))
            out[key] = c
    return out


def divisor_equation(variety: ToyVariety, E: MultidegreeDivisor) -> dict:
    poly = {tuple(tuple(0 for _ in range(n + 1)) for n in variety.factors): 1}
    for comp, k in zip(variety.components, E.mult):
        lin = _linear_poly(variety, comp)
        for _ in range(k):
            poly = _poly_mul(poly, lin)
    return poly


def divisible_subspace(variety: ToyVariety, multidegree, E: MultidegreeDivisor) -> Subspace:
    """Sections of O(d) divisible by the equation of E, in monomial coordinates.

    This is the image of L(nD - E) inside L(nD) under the trivialization by the
    equation of nD.
    """
    basis = monomials(variety, multidegree)
    pos = {m: i for i, m in enumerate(basis)}
    rest = tuple(a - b for a, b in zip(multidegree, E.multidegree))
    eq = divisor_equation(variety, E)
    gens = []
    for mono in monomials(variety, rest):
        prod = _poly_mul({mono: 1}, eq)
        vec = [0] * len(basis)
        for k, v in prod.items():
            vec[pos[k]] = v
        gens.append(vec)
    return Subspace(len(basis), gens)


def section_chain(variety: ToyVariety, D: MultidegreeDivisor, D_P: MultidegreeDivisor, n: int) -> list:
    """W_m = L(nD - mD_P) as subspaces of L(nD), for m = 0, 1, ... while nonzero."""
    deg = tuple(n * d for d in D.multidegree)
    chain = []
    m = 0
    while True:
        W = divisible_subspace(variety, deg, D_P * m)
        if W.dim == 0:
            break
        chain.append(W)
        m += 1
        if D_P.is_zero():
            break
    return chain
