import itertools
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from largediv.errors import InputError
from largediv.incidence import compute_m
from largediv.intersection import DivisorClass, eval_form, power
from largediv.toy import (MultidegreeDivisor, ToyVariety, fP_table, h0, incidence_of, intersection_form_of,
                          monomial_order, monomials, section_chain)
from oracles import count_monomials

P2 = ToyVariety((2,))
P1P1 = ToyVariety((1, 1))


@pytest.mark.parametrize("v, d, expected", [(P2, (0,), 1), (P2, (3,), 10), (P1P1, (2, 3), 12), (P2, (-1,), 0)])
def test_h0_examples(v, d, expected):
    assert h0(v, d) == expected


@given(st.lists(st.integers(1, 3), min_size=1, max_size=3).flatmap(
    lambda f: st.tuples(st.just(tuple(f)), st.tuples(*[st.integers(-2, 6) for _ in f]))))
def test_h0_matches_enumeration(data):
    factors, degs = data
    assert h0(ToyVariety(factors), degs) == count_monomials(factors, degs)


def test_fp_three_points():
    v = ToyVariety.points_on_line(3)
    D = MultidegreeDivisor(v, (1, 1, 1))
    assert fP_table(v, D, MultidegreeDivisor(v, (1, 0, 0)), 1) == [1, 1, 1, 1]


def test_fp_with_dp_equal_d():
    v = ToyVariety.general_hyperplanes(2, 3)
    D = MultidegreeDivisor(v, (1, 1, 1))
    row = fP_table(v, D, D, 1)
    assert row[0] == h0(v, (3,)) - 1 and row[1] == 1 and sum(row) == h0(v, (3,))


def test_fp_large_dp_hits_zero():
    v = ToyVariety.points_on_line(2)
    D = MultidegreeDivisor(v, (1, 0))
    row = fP_table(v, D, MultidegreeDivisor(v, (0, 4)), 1)
    assert row == [2] and sum(row) == h0(v, (1,))


def test_fp_empty_dp_and_bad_n():
    v = ToyVariety.points_on_line(2)
    D = MultidegreeDivisor(v, (1, 1))
    assert fP_table(v, D, MultidegreeDivisor(v, (0, 0)), 1) == []
    with pytest.raises(InputError):
        fP_table(v, D, D, 0)


@pytest.mark.parametrize("factors, key, expected", [
    ((1, 1), ("H1", "H2"), 1), ((1, 1), ("H1", "H1"), 0), ((1, 1), ("H2", "H2"), 0),
    ((2,), ("H1", "H1"), 1), ((1, 1, 1), ("H1", "H2", "H3"), 1), ((1, 1, 1), ("H1", "H1", "H2"), 0),
])
def test_toy_forms(factors, key, expected):
    form = intersection_form_of(ToyVariety(factors))
    assert eval_form(form, [DivisorClass.of(k) for k in key]) == expected


def test_monomial_orders():
    v = ToyVariety.coordinate_hyperplanes(2)
    assert monomial_order(v, [(2, 1, 0)], "D1") == 2
    line = ToyVariety.points_on_line(3)
    # x0 vanishes at the point t = 0; x0 x1^2 is the section of L(3P) vanishing there once
    assert monomial_order(line, [(1, 2)], "P1") == 1
    assert monomial_order(line, [(1, 2)], "P1", MultidegreeDivisor(line, (3, 0, 0))) == -2
    assert monomial_order(line, [(1, 2)], "P2") == 0


def test_monomial_order_depends_on_own_factor():
    v = ToyVariety((1, 2), [*ToyVariety.coordinate_hyperplanes(1).components])
    for other in [(3, 0, 0), (0, 1, 2), (1, 1, 1)]:
        assert monomial_order(v, [(2, 1), other], "D1") == 2


def test_incidence_of_general_lines():
    v = ToyVariety.general_hyperplanes(2, 6)
    cx = incidence_of(v)
    assert compute_m(cx) == 2 and not cx.has_common_components


def test_incidence_detects_common_components():
    v = ToyVariety.projective(2, [[1, 0, 0], [2, 0, 0], [0, 1, 0]])
    cx = incidence_of(v)
    assert cx.has_common_components


def test_default_flags():
    assert ToyVariety.general_hyperplanes(2, 3).default_flags("D1")["ample"]
    flags = ToyVariety((1, 1), ToyVariety.coordinate_hyperplanes(1).components).default_flags("D1")
    assert not flags["ample"] and not flags["quasi_ample"]


@given(st.integers(1, 3), st.integers(1, 3), st.integers(1, 4))
def test_fp_rows_sum_to_h0_and_match_section_chain(r, k, n):
    v = ToyVariety.general_hyperplanes(2, r + 1)
    D = MultidegreeDivisor(v, (1,) * (r + 1))
    D_P = MultidegreeDivisor(v, tuple(1 if i < min(k, 2) else 0 for i in range(r + 1)))
    row = fP_table(v, D, D_P, n)
    assert sum(row) == h0(v, (n * (r + 1),))
    if n * (r + 1) <= 8:
        dims = [W.dim for W in section_chain(v, D, D_P, n)] + [0]
        assert row == [a - b for a, b in zip(dims, dims[1:])]


@pytest.mark.parametrize("d", [1, 2, 3])
def test_surface_growth_lower_bound(d):
    # h0(nD) - n^2 D^2 / 2 stays bounded below by -c n on P^2 and P^1 x P^1
    for n in range(1, 60):
        assert h0(P2, (n * d,)) - Fraction(n * n * d * d, 2) >= 0
        assert h0(P1P1, (n * d, n)) - Fraction(n * n * 2 * d, 2) >= 0
