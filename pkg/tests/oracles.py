"""Ground truth computed by routes that share no code with the package."""

import itertools
from fractions import Fraction

import mpmath


def count_monomials(factors, degrees):
    """h0 of O(d_1,...,d_k) on a product of projective spaces, by enumeration."""
    if any(d < 0 for d in degrees):
        return 0
    total = 1
    for n, d in zip(factors, degrees):
        # the last exponent is forced, so enumerate the first n
        total *= sum(1 for e in itertools.product(range(d + 1), repeat=n) if sum(e) <= d)
    return total


def product_intersection(factors, classes):
    """Intersection of classes sum_j c_j H_j on prod P^{n_j}: coefficient of prod H_j^{n_j}.

    Each class is a tuple of coefficients on H_1..H_k. Expands the product of
    linear forms as polynomials in the H_j.
    """
    poly = {tuple(0 for _ in factors): Fraction(1)}
    for cls in classes:
        nxt = {}
        for mono, v in poly.items():
            for j, c in enumerate(cls):
                if c:
                    key = tuple(e + (i == j) for i, e in enumerate(mono))
                    nxt[key] = nxt.get(key, 0) + v * Fraction(c)
        poly = nxt
    return poly.get(tuple(factors), Fraction(0))


def _mp(x):
    x = Fraction(x)
    return mpmath.mpf(x.numerator) / x.denominator


def g_high_precision(a, c, dps=60):
    """1 - 2ac + 3a + (3a - 1) sqrt(1 - ac) in floating point at dps digits."""
    with mpmath.workdps(dps):
        a, c = mpmath.mpf(a.numerator) / a.denominator, mpmath.mpf(c.numerator) / c.denominator
        return 1 - 2 * a * c + 3 * a + (3 * a - 1) * mpmath.sqrt(1 - a * c)


def surf_clause_float(A, B, C, dps=60):
    """Pass/Fail of the surface criterion evaluated in high-precision floating point."""
    with mpmath.workdps(dps):
        disc = _mp(Fraction(B) ** 2 - Fraction(A) * Fraction(C))
        A, B, C = map(_mp, (A, B, C))
        if A == 0:
            return C - 4 * B > 0
        expr = B * B - 2 * A * C + 3 * A * B + (3 * A - B) * mpmath.sqrt(disc)
        return expr < 0 if A > 0 else expr > 0


def cubic_float(A, B, C, dps=60):
    with mpmath.workdps(dps):
        disc = _mp(Fraction(B) ** 2 - Fraction(A) * Fraction(C))
        A, B, C = map(_mp, (A, B, C))
        K = (B - mpmath.sqrt(disc)) / A
        return -A / 3 * K ** 3 + B / 2 * K ** 2 - C / 2


def cz_counterexample(x, U):
    """True when the rearrangement conclusion fails for a precondition-satisfying instance."""
    lhs = sum((j + 1) * v for j, v in enumerate(x))
    rhs = sum((j + 1) * v for j, v in enumerate(U))
    return lhs < rhs


def equidegree_grid(intersect, r, steps=40, rounds=12):
    """Zooming grid search for positive weights with a_i D_i.D' equal across i (surface forms).

    `intersect(i, j)` gives D_i.D_j. The first weight is pinned to 1 and the
    log-weights of the others are searched on a grid that shrinks around the
    best point each round. Returns (spread, weights).
    """
    import math
    centre, half = [0.0] * (r - 1), 4.0
    best = (math.inf, None)
    for _ in range(rounds):
        axes = [[c - half + 2 * half * k / steps for k in range(steps + 1)] for c in centre]
        for logs in itertools.product(*axes):
            w = (1.0,) + tuple(math.exp(x) for x in logs)
            vals = [w[i] * sum(w[j] * intersect(i, j) for j in range(r)) for i in range(r)]
            total = sum(vals)
            if total <= 0:
                continue
            spread = max(abs(v / total - 1 / r) for v in vals)
            if spread < best[0]:
                best = (spread, w)
                centre = list(logs)
        half /= 4
    return best


def rank_exact(rows):
    """Rank over Q by Fraction elimination."""
    m = [[Fraction(x) for x in r] for r in rows]
    rank, col = 0, 0
    ncols = len(m[0]) if m else 0
    while rank < len(m) and col < ncols:
        piv = next((i for i in range(rank, len(m)) if m[i][col] != 0), None)
        if piv is None:
            col += 1
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for i in range(len(m)):
            if i != rank and m[i][col] != 0:
                f = m[i][col] / m[rank][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
        col += 1
    return rank
