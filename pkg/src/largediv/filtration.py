"""Two-filtration common basis and the order bookkeeping behind the sum criterion."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import InputError, MalformedFiltration
from .linalg import Subspace, Vector


@dataclass(frozen=True)
class Filtration:
    """Descending chain V = W_1 ⊇ W_2 ⊇ ... ⊇ W_h of subspaces of Q^d."""

    ambient_dim: int
    chain: tuple

    def __post_init__(self):
        chain = tuple(self.chain)
        if not chain:
            raise MalformedFiltration("a filtration needs at least the ambient space")
        for W in chain:
            if not isinstance(W, Subspace) or W.dim_ambient != self.ambient_dim:
                raise MalformedFiltration("every member must be a subspace of the ambient space")
        if chain[0].dim != self.ambient_dim:
            raise MalformedFiltration(f"first member has dimension {chain[0].dim}, expected {self.ambient_dim}")
        for i, (a, b) in enumerate(zip(chain, chain[1:])):
            if not a.contains_subspace(b):
                raise MalformedFiltration(f"member {i + 2} is not contained in member {i + 1}")
        object.__setattr__(self, "chain", chain)

    @classmethod
    def from_matrices(cls, ambient_dim: int, matrices: Sequence[Sequence[Sequence]]):
        """Build from spanning matrices; the ambient space is prepended if absent."""
        subs = [Subspace(ambient_dim, rows) for rows in matrices]
        if not subs or subs[0].dim != ambient_dim:
            subs.insert(0, Subspace.full(ambient_dim))
        return cls(ambient_dim, tuple(subs))

    def __len__(self):
        return len(self.chain)


@dataclass(frozen=True)
class AdaptedBasis:
    vectors: tuple
    tags: dict = field(default_factory=dict)  # label -> tuple of basis indices per chain member


def members_in(vectors: Sequence[Vector], W: Subspace) -> tuple:
    return tuple(i for i, v in enumerate(vectors) if W.contains(v))


def _hyperplane_over(W: Subspace, V: Subspace) -> Subspace:
    """Canonical hyperplane of V containing the proper subspace W."""
    extra = W.complement_in(V)
    return Subspace(V.dim_ambient, list(W.rows) + list(extra[: V.dim - 1 - W.dim]))


def _adapted(V: Subspace, chain1: list, chain2: list) -> list:
    if V.dim == 0:
        return []
    proper1 = [W for W in chain1 if W.dim < V.dim]
    proper2 = [W for W in chain2 if W.dim < V.dim]
    if not proper1 and not proper2:
        return list(V.rows)
    if not proper1:
        proper1, proper2 = proper2, proper1
    H = _hyperplane_over(proper1[0], V)
    below = _adapted(H, proper1, [W.intersect(H) for W in proper2])
    outside = [W for W in proper2 if not H.contains_subspace(W)]
    if outside:
        deepest = outside[-1]
        v = deepest.intersect(H).complement_in(deepest)[0]
    else:
        v = H.complement_in(V)[0]
    return below + [v]


def common_adapted_basis(F1: Filtration, F2: Filtration) -> AdaptedBasis:
    """Basis of the ambient space containing a basis of every member of both chains.

    Recursion on dimension: enlarge the first proper member of one chain to a
    hyperplane H, recurse on H with the other chain intersected with H, and
    finish with a vector from the deepest member of the other chain that
    escapes H.
    """
    if F1.ambient_dim != F2.ambient_dim:
        raise InputError("filtrations live in different ambient spaces")
    V = Subspace.full(F1.ambient_dim)
    vectors = tuple(_adapted(V, list(F1.chain), list(F2.chain)))
    tags = {
        "F1": tuple(members_in(vectors, W) for W in F1.chain),
        "F2": tuple(members_in(vectors, W) for W in F2.chain),
    }
    return AdaptedBasis(vectors, tags)


def verify_adapted(basis: AdaptedBasis, F: Filtration) -> bool:
    vectors = list(basis.vectors)
    if any(len(v) != F.ambient_dim for v in vectors):
        return False
    if len(vectors) != F.ambient_dim or Subspace(F.ambient_dim, vectors).dim != F.ambient_dim:
        return False
    for W in F.chain:
        inside = [vectors[i] for i in members_in(vectors, W)]
        if len(inside) != W.dim:
            return False
    return True


@dataclass(frozen=True)
class LayerSchedule:
    layers: tuple  # layer index m for each basis slot
    bound: int     # sum over slots of (m - n)


def ordered_largeness_basis(dims: Sequence[int], n: int) -> LayerSchedule:
    """Fill slots from the deepest layer V_M outward; each slot in layer m
    vanishes to order >= m along D_P and has a pole of order <= n along D."""
    dims = [int(x) for x in dims]
    if any(x < 0 for x in dims):
        raise InputError("layer sizes must be nonnegative")
    layers = []
    for m in range(len(dims) - 1, -1, -1):
        layers.extend([m] * dims[m])
    return LayerSchedule(tuple(layers), sum((m - n) * f for m, f in enumerate(dims)))


def layer_profile(vectors: Sequence[Vector], chain: Sequence[Subspace]) -> tuple:
    """For each vector, the largest index m with the vector in W_m (0-based)."""
    out = []
    for v in vectors:
        m = 0
        while m + 1 < len(chain) and chain[m + 1].contains(v):
            m += 1
        out.append(m)
    return tuple(out)


def realized_bound(profile: Sequence[int], n: int) -> int:
    return sum(m - n for m in profile)
