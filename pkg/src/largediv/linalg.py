"""Exact rational row reduction and canonical subspaces."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .rational import to_fraction

Vector = tuple  # tuple of Fraction


def as_vector(values: Iterable) -> Vector:
    return tuple(to_fraction(v) for v in values)


def rref(rows: Sequence[Sequence]) -> tuple[list[Vector], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    mat = [list(as_vector(r)) for r in rows]
    if not mat:
        return [], []
    ncols = len(mat[0])
    pivots = []
    lead = 0
    for col in range(ncols):
        pivot_row = next((i for i in range(lead, len(mat)) if mat[i][col] != 0), None)
        if pivot_row is None:
            continue
        mat[lead], mat[pivot_row] = mat[pivot_row], mat[lead]
        inv = 1 / mat[lead][col]
        mat[lead] = [x * inv for x in mat[lead]]
        for i in range(len(mat)):
            if i != lead and mat[i][col] != 0:
                factor = mat[i][col]
                mat[i] = [a - factor * b for a, b in zip(mat[i], mat[lead])]
        pivots.append(col)
        lead += 1
        if lead == len(mat):
            break
    return [tuple(r) for r in mat[:lead]], pivots


def rank(rows) -> int:
    return len(rref(rows)[0])


def nullspace(rows: Sequence[Sequence], ncols: int | None = None) -> list[Vector]:
    """Basis of {v : M v = 0}, one vector per free column."""
    if ncols is None:
        ncols = len(rows[0])
    reduced, pivots = rref(rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(reduced, pivots):
            v[p] = -row[f]
        basis.append(tuple(v))
    return basis


def left_nullspace(rows: Sequence[Sequence]) -> list[Vector]:
    """Basis of {c : c M = 0}."""
    if not rows:
        return []
    transposed = [tuple(r[j] for r in rows) for j in range(len(rows[0]))]
    return nullspace(transposed, ncols=len(rows))


class Subspace:
    """Row span of a rational matrix, stored in canonical RREF."""

    __slots__ = ("dim_ambient", "rows", "pivots")

    def __init__(self, dim_ambient: int, generators: Iterable[Sequence] = ()):
        gens = [as_vector(g) for g in generators]
        for g in gens:
            if len(g) != dim_ambient:
                raise ValueError(f"vector of length {len(g)} in ambient dimension {dim_ambient}")
        self.dim_ambient = dim_ambient
        self.rows, self.pivots = rref(gens)

    @classmethod
    def full(cls, d: int) -> "Subspace":
        return cls(d, [[1 if i == j else 0 for j in range(d)] for i in range(d)])

    @classmethod
    def zero(cls, d: int) -> "Subspace":
        return cls(d, [])

    @property
    def dim(self) -> int:
        return len(self.rows)

    def __eq__(self, other):
        return isinstance(other, Subspace) and self.dim_ambient == other.dim_ambient and self.rows == other.rows

    def __hash__(self):
        return hash((self.dim_ambient, tuple(self.rows)))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.dim_ambient})"

    def contains(self, vector) -> bool:
        v = list(as_vector(vector))
        for row, p in zip(self.rows, self.pivots):
            if v[p] != 0:
                c = v[p]
                v = [a - c * b for a, b in zip(v, row)]
        return all(x == 0 for x in v)

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(r) for r in other.rows)

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace(self.dim_ambient, list(self.rows) + list(other.rows))

    def intersect(self, other: "Subspace") -> "Subspace":
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.dim_ambient)
        k = self.dim
        # columns are the generators of self followed by minus those of other
        cols = list(self.rows) + [tuple(-x for x in r) for r in other.rows]
        mat = [[c[i] for c in cols] for i in range(self.dim_ambient)]
        gens = []
        for coeffs in nullspace(mat, ncols=len(cols)):
            vec = [Fraction(0)] * self.dim_ambient
            for a, row in zip(coeffs[:k], self.rows):
                if a:
                    vec = [x + a * y for x, y in zip(vec, row)]
            gens.append(vec)
        return Subspace(self.dim_ambient, gens)

    def complement_in(self, outer: "Subspace") -> list[Vector]:
        """Canonical vectors of `outer` completing a basis of self to one of outer.

        Assumes self is contained in outer. Scans the RREF rows of `outer` in
        order and keeps each one that enlarges the running span.
        """
        span = Subspace(self.dim_ambient, self.rows)
        chosen = []
        for row in outer.rows:
            if not span.contains(row):
                chosen.append(row)
                span = Subspace(self.dim_ambient, list(span.rows) + [row])
        return chosen
