"""Incidence complexes: which components meet, m, strata D_P and their splits."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import InputError
from .intersection import DivisorClass, IntersectionForm, mixed_power
from .rational import to_fraction


def _closure(sets):
    out = set()
    for s in sets:
        s = tuple(sorted(s))
        for k in range(1, len(s) + 1):
            out.update(frozenset(c) for c in itertools.combinations(s, k))
    return out


@dataclass(frozen=True)
class IncidenceComplex:
    """Downward-closed family of index sets (0-based) with nonempty common intersection."""

    n: int
    meets: frozenset
    common_pairs: frozenset = frozenset()

    def __post_init__(self):
        meets = frozenset(frozenset(s) for s in self.meets if len(s) > 0)
        for s in meets:
            bad = [i for i in s if not 0 <= i < self.n]
            if bad:
                raise InputError(f"meeting set {sorted(s)} references unknown components {bad}")
        lonely = [i + 1 for i in range(self.n) if frozenset((i,)) not in meets]
        if lonely:
            raise InputError(f"components {lonely} are missing from meets (every effective component meets itself)")
        missing = [sorted(t) for t in _closure(meets) if t not in meets]
        if missing:
            raise InputError(f"meets is not downward closed; missing {sorted(missing)[:5]}")
        pairs = set()
        for pair in self.common_pairs:
            a, b = tuple(pair) if len(pair) == 2 else (None, None)
            if a is None or a == b:
                raise InputError(f"common-component relation must pair distinct indices, got {pair}")
            pairs.add(frozenset((a, b)))
        object.__setattr__(self, "meets", meets)
        object.__setattr__(self, "common_pairs", frozenset(pairs))

    @classmethod
    def generated_by(cls, n: int, maximal: Sequence[Sequence[int]], common_pairs=(), include_singletons=True):
        sets = [tuple(s) for s in maximal]
        if include_singletons:
            sets += [(i,) for i in range(n)]
        return cls(n, frozenset(_closure(sets)), frozenset(frozenset(p) for p in common_pairs))

    @classmethod
    def general_position(cls, n: int, m: int, common_pairs=()):
        """Every set of at most m components meets, no m+1 do."""
        return cls.generated_by(n, itertools.combinations(range(n), min(m, n)), common_pairs)

    @property
    def has_common_components(self) -> bool:
        return bool(self.common_pairs)

    def maximal(self) -> list[tuple]:
        sets = sorted(self.meets, key=lambda s: (-len(s), sorted(s)))
        out = []
        for s in sets:
            if not any(s < t for t in out):
                out.append(s)
        return sorted((tuple(sorted(s)) for s in out), key=lambda t: (len(t), t))


def compute_m(cx: IncidenceComplex) -> int:
    if not cx.meets:
        raise InputError("empty incidence complex")
    return max(len(s) for s in cx.meets)


@dataclass(frozen=True)
class Stratum:
    indices: tuple
    D_P: DivisorClass

    @property
    def ident(self) -> str:
        return "{" + ",".join(str(i + 1) for i in self.indices) + "}"


def strata(cx: IncidenceComplex, classes: Sequence[DivisorClass], weights=None) -> list[Stratum]:
    """One stratum per maximal meeting set, D_P = sum of weighted classes."""
    if len(classes) != cx.n:
        raise InputError(f"{len(classes)} component classes for {cx.n} components")
    weights = [Fraction(1)] * cx.n if weights is None else [to_fraction(w) for w in weights]
    out = []
    for idx in cx.maximal():
        dp = DivisorClass.zero()
        for i in idx:
            dp = dp + classes[i] * weights[i]
        out.append(Stratum(idx, dp))
    return out


def split_bound(m: int) -> int:
    return (m + 1) // 2


@dataclass(frozen=True)
class Split:
    stratum: Stratum
    part1: tuple
    part2: tuple
    D1: DivisorClass
    D2: DivisorClass

    @property
    def parts(self):
        return ((self.part1, self.D1), (self.part2, self.D2))


@dataclass(frozen=True)
class Unsplittable:
    stratum: Stratum
    reason: str = "every bipartition with parts of admissible size separates a common-component pair"

    def __bool__(self):
        return False


def candidate_splits(stratum: Stratum, cx: IncidenceComplex, m: int | None = None):
    """Admissible bipartitions (part1 holds the smallest index), lexicographic order."""
    m = compute_m(cx) if m is None else m
    bound = split_bound(m)
    idx = stratum.indices
    if not idx:
        return []
    first, rest = idx[0], idx[1:]
    found = []
    for k in range(len(rest) + 1):
        for extra in itertools.combinations(rest, k):
            p1 = (first,) + extra
            p2 = tuple(i for i in rest if i not in extra)
            if len(p1) > bound or len(p2) > bound:
                continue
            if any(frozenset((a, b)) in cx.common_pairs for a in p1 for b in p2):
                continue
            found.append((p1, p2))
    return sorted(found)


def split_stratum(stratum: Stratum, cx: IncidenceComplex, classes=None, weights=None,
                  form: IntersectionForm | None = None, D: DivisorClass | None = None, m=None):
    """Pick an admissible split; with a form and D, minimize max D^{q-1}.D_{P,j}."""
    options = candidate_splits(stratum, cx, m)
    if not options:
        return Unsplittable(stratum)
    if classes is None:
        classes = [DivisorClass.of(f"D{i + 1}") for i in range(cx.n)]
    weights = [Fraction(1)] * cx.n if weights is None else [to_fraction(w) for w in weights]

    def part_class(part):
        total = DivisorClass.zero()
        for i in part:
            total = total + classes[i] * weights[i]
        return total

    best = None
    for p1, p2 in options:
        split = Split(stratum, p1, p2, part_class(p1), part_class(p2))
        if form is None or D is None:
            return split
        score = max(mixed_power(form, D, split.D1), mixed_power(form, D, split.D2))
        if best is None or score < best[0]:
            best = (score, split)
    return best[1]
