from decimal import Decimal
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st

from largediv.errors import IndeterminateSign
from largediv.linalg import Subspace, left_nullspace, nullspace, rank, rref
from largediv.rational import (Surd, encode_number, format_rational, parse_rational, rational_sqrt, sign_of,
                               to_fraction)
from oracles import rank_exact


def test_conversions():
    assert to_fraction("3/4") == Fraction(3, 4)
    assert to_fraction(" -2 ") == -2
    assert to_fraction(0.5) == Fraction(1, 2)
    assert to_fraction(Decimal("0.25")) == Fraction(1, 4)
    assert to_fraction(mpmath.mpf(0.75)) == Fraction(3, 4)
    assert format_rational(Fraction(6, 4)) == "3/2" and format_rational(4) == "4"
    with pytest.raises(ValueError):
        parse_rational("1/0")
    with pytest.raises(TypeError):
        to_fraction(True)


def test_rational_sqrt():
    assert rational_sqrt(Fraction(9, 4)) == Fraction(3, 2)
    assert rational_sqrt(Fraction(2)) is None and rational_sqrt(Fraction(-1)) is None


def test_surd_collapses_and_signs():
    assert Surd.make(1, 2, 4) == 5
    s = Surd.make(3, -2, 2)  # 3 - 2 sqrt 2 > 0, about 0.17
    assert sign_of(s) == 1
    assert sign_of(Surd.make(-3, 2, 2)) == -1
    enc = encode_number(s)
    assert enc["sign"] == 1 and float(enc["interval"][0]) <= float(s) <= float(enc["interval"][1])
    assert encode_number(Fraction(-1, 4)) == "-1/4"


def test_indeterminate_sign_at_low_cap():
    # 577/408 - sqrt 2 is about 2e-6 and needs more than the cap to separate from 0
    near = Surd.make(Fraction(665857, 470832), -1, 2)
    assert sign_of(near) == 1
    with pytest.raises(IndeterminateSign):
        near.certified_sign(max_prec=16)


@given(st.fractions(max_denominator=50), st.fractions(max_denominator=50),
       st.fractions(min_value=0, max_value=50, max_denominator=20))
def test_surd_sign_matches_high_precision(x, y, z):
    s = Surd.make(x, y, z)
    with mpmath.workdps(80):
        val = mpmath.mpf(x.numerator) / x.denominator + mpmath.mpf(y.numerator) / y.denominator * mpmath.sqrt(
            mpmath.mpf(z.numerator) / z.denominator)
    expected = (val > 0) - (val < 0)
    if isinstance(s, Surd):
        assert s.sign() == expected
    else:
        assert sign_of(s) == expected


mat = st.lists(st.lists(st.integers(-3, 3), min_size=4, max_size=4), min_size=0, max_size=5)


@given(mat)
def test_rank_and_nullspace(rows):
    assert rank(rows) == rank_exact(rows)
    ns = nullspace(rows, 4)
    assert len(ns) == 4 - rank(rows)
    for v in ns:
        assert all(sum(Fraction(a) * b for a, b in zip(r, v)) == 0 for r in rows)
    if rows:
        for c in left_nullspace(rows):
            assert all(sum(ci * Fraction(r[j]) for ci, r in zip(c, rows)) == 0 for j in range(4))


@given(mat, mat)
def test_subspace_operations(a, b):
    A, B = Subspace(4, a), Subspace(4, b)
    assert (A + B).dim + A.intersect(B).dim == A.dim + B.dim
    assert A.contains_subspace(A.intersect(B)) and (A + B).contains_subspace(A)
    comp = A.complement_in(A + B)
    assert Subspace(4, list(A.rows) + list(comp)) == A + B
    assert Subspace(4, list(A.rows)) == A and hash(Subspace(4, list(A.rows))) == hash(A)


def test_rref_pivots():
    rows, piv = rref([[0, 2, 4], [1, 1, 1]])
    assert piv == [0, 1] and rows[1] == (0, 1, 2)


@given(st.fractions(max_denominator=30), st.fractions(min_value=-5, max_value=5, max_denominator=30),
       st.integers(2, 50))
def test_encoded_interval_contains_value(x, y, z):
    s = Surd.make(x, y, z)
    if not isinstance(s, Surd):
        return
    lo, hi = encode_number(s)["interval"]
    with mpmath.workdps(100):
        val = mpmath.mpf(x.numerator) / x.denominator + mpmath.mpf(y.numerator) / y.denominator * mpmath.sqrt(z)
        assert mpmath.mpf(lo) <= val <= mpmath.mpf(hi)
