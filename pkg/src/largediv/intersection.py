"""Symmetric multilinear intersection forms on named generator classes."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import ArityError, HypothesisViolation, UnknownGeneratorError
from .rational import to_fraction


@dataclass(frozen=True)
class GeneratorBasis:
    names: tuple
    q: int

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        if not self.names:
            raise ValueError("generator basis must be nonempty")
        if len(set(self.names)) != len(self.names):
            raise ValueError("generator names must be distinct")
        if not isinstance(self.q, int) or self.q < 1:
            raise ValueError(f"dimension q must be a positive integer, got {self.q!r}")

    def index(self, name) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise UnknownGeneratorError(f"unknown generator {name!r}") from None


class DivisorClass:
    """Rational combination of generators; immutable, zero coefficients dropped."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Mapping | None = None):
        clean = {}
        for name, c in (coeffs or {}).items():
            c = to_fraction(c)
            if c != 0:
                clean[name] = c
        self._coeffs = dict(sorted(clean.items()))

    @classmethod
    def of(cls, name, coeff=1) -> "DivisorClass":
        return cls({name: coeff})

    @classmethod
    def zero(cls) -> "DivisorClass":
        return cls()

    @property
    def coeffs(self) -> dict:
        return dict(self._coeffs)

    def items(self):
        return self._coeffs.items()

    def coeff(self, name) -> Fraction:
        return self._coeffs.get(name, Fraction(0))

    def is_zero(self) -> bool:
        return not self._coeffs

    def support(self) -> tuple:
        return tuple(self._coeffs)

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        merged = dict(self._coeffs)
        for k, v in other._coeffs.items():
            merged[k] = merged.get(k, 0) + v
        return DivisorClass(merged)

    def __neg__(self):
        return DivisorClass({k: -v for k, v in self._coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, scalar):
        s = to_fraction(scalar)
        return DivisorClass({k: s * v for k, v in self._coeffs.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, DivisorClass) and self._coeffs == other._coeffs

    def __hash__(self):
        return hash(tuple(self._coeffs.items()))

    def __repr__(self):
        inner = " + ".join(f"{v}*{k}" for k, v in self._coeffs.items()) or "0"
        return f"DivisorClass({inner})"


def combine(classes: Iterable[DivisorClass], weights: Iterable) -> DivisorClass:
    total = DivisorClass.zero()
    for cls_, w in zip(classes, weights):
        total = total + cls_ * w
    return total


@dataclass(frozen=True)
class IntersectionForm:
    """q-linear symmetric form; entries keyed by sorted tuples of generator names.

    Missing entries read as zero. `warnings` lists absent multisets and any
    negative product among generators flagged nef; both are advisory.
    """

    basis: GeneratorBasis
    entries: Mapping = field(default_factory=dict)
    nef: frozenset = frozenset()
    warnings: tuple = ()

    def __post_init__(self):
        order = {n: i for i, n in enumerate(self.basis.names)}
        table = {}
        for key, value in dict(self.entries).items():
            names = tuple(key)
            if len(names) != self.basis.q:
                raise ArityError(f"entry {names} has {len(names)} factors, expected {self.basis.q}")
            for n in names:
                if n not in order:
                    raise UnknownGeneratorError(f"unknown generator {n!r} in entry {names}")
            k = tuple(sorted(names, key=order.__getitem__))
            v = to_fraction(value)
            if k in table and table[k] != v:
                raise ValueError(f"conflicting values for entry {k}")
            table[k] = v
        for n in self.nef:
            self.basis.index(n)
        object.__setattr__(self, "entries", table)
        object.__setattr__(self, "nef", frozenset(self.nef))
        object.__setattr__(self, "warnings", tuple(self._diagnose(order)))

    def _diagnose(self, order):
        notes = []
        keys = list(itertools.combinations_with_replacement(self.basis.names, self.basis.q))
        missing = [k for k in keys if k not in self.entries]
        if missing and len(missing) < len(keys):
            shown = ", ".join(".".join(k) for k in missing[:8])
            more = f" (+{len(missing) - 8} more)" if len(missing) > 8 else ""
            notes.append(f"entries absent, read as 0: {shown}{more}")
        nef_sorted = sorted(self.nef, key=order.__getitem__)
        for k in itertools.combinations_with_replacement(nef_sorted, self.basis.q):
            if self.entries.get(k, 0) < 0:
                notes.append(f"nef generators with negative product {'.'.join(k)} = {self.entries[k]}")
        return notes

    @property
    def q(self) -> int:
        return self.basis.q

    def entry(self, *names) -> Fraction:
        order = {n: i for i, n in enumerate(self.basis.names)}
        return self.entries.get(tuple(sorted(names, key=order.__getitem__)), Fraction(0))

    def generator(self, name) -> DivisorClass:
        self.basis.index(name)
        return DivisorClass.of(name)

    def _check(self, cls_: DivisorClass):
        for name in cls_.support():
            if name not in self.basis.names:
                raise UnknownGeneratorError(f"unknown generator {name!r}")


def eval_form(form: IntersectionForm, args) -> Fraction:
    """Multilinear expansion of the pairing over all generator tuples."""
    args = list(args)
    if len(args) != form.q:
        raise ArityError(f"expected {form.q} classes, got {len(args)}")
    for a in args:
        form._check(a)
    if any(a.is_zero() for a in args):
        return Fraction(0)
    order = {n: i for i, n in enumerate(form.basis.names)}
    total = Fraction(0)
    for combo in itertools.product(*(list(a.items()) for a in args)):
        value = form.entries.get(tuple(sorted((n for n, _ in combo), key=order.__getitem__)))
        if value:
            prod = value
            for _, c in combo:
                prod *= c
            total += prod
    return total


def power(form: IntersectionForm, D: DivisorClass, k: int | None = None) -> Fraction:
    """D^q; `k`, when given, must equal q."""
    if k is not None and k != form.q:
        raise ArityError(f"power {k} differs from the form's arity {form.q}")
    return eval_form(form, [D] * form.q)


def mixed_power(form: IntersectionForm, D: DivisorClass, E: DivisorClass) -> Fraction:
    """D^{q-1}.E."""
    return eval_form(form, [D] * (form.q - 1) + [E])


@dataclass(frozen=True)
class HodgeResult:
    holds: bool
    margin: Fraction


def hodge_check(form: IntersectionForm, D: DivisorClass, E: DivisorClass) -> HodgeResult:
    """(D^2)(E^2) <= (D.E)^2 on a surface, requiring D^2 > 0."""
    if form.q != 2:
        raise ArityError("the Hodge index check needs a surface form (q = 2)")
    d2 = power(form, D)
    if d2 <= 0:
        raise HypothesisViolation(f"D^2 = {d2} is not positive")
    de = eval_form(form, [D, E])
    margin = de * de - d2 * power(form, E)
    return HodgeResult(margin >= 0, margin)
