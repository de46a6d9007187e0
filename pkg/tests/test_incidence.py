import itertools

import pytest
from hypothesis import given, strategies as st

from conftest import cls
from largediv.errors import InputError
from largediv.incidence import (IncidenceComplex, Split, Unsplittable, candidate_splits, compute_m,
                                split_bound, split_stratum, strata)
from largediv.intersection import DivisorClass


def test_disjoint_components_have_m_one():
    assert compute_m(IncidenceComplex.generated_by(4, [])) == 1


def test_general_lines_have_m_two():
    assert compute_m(IncidenceComplex.general_position(6, 2)) == 2


def test_four_fold_meeting_points_give_m_four():
    # lifts of the triple points of three curves meet four components at a time
    cx = IncidenceComplex.generated_by(9, [(0, 1, 2, 3), (2, 4, 5, 6), (5, 6, 7, 8)])
    assert compute_m(cx) == 4


def test_points_on_curve_strata():
    cx = IncidenceComplex.generated_by(3, [])
    ss = strata(cx, [cls(P=1)] * 3)
    assert len(ss) == 3 and all(s.D_P == cls(P=1) for s in ss)


@pytest.mark.parametrize("r", [3, 5, 9])
def test_line_strata(r):
    cx = IncidenceComplex.general_position(r, 2)
    classes = [DivisorClass.of(f"L{i}") for i in range(r)]
    ss = strata(cx, classes, weights=list(range(1, r + 1)))
    assert len(ss) == r * (r - 1) // 2
    for s in ss:
        i, j = s.indices
        assert s.D_P == classes[i] * (i + 1) + classes[j] * (j + 1)


def test_p1xp1_triple_strata():
    cx = IncidenceComplex.generated_by(3, [(0, 2), (1, 2)])
    assert [s.ident for s in strata(cx, [cls(D1=1), cls(D2=1), cls(D3=1)])] == ["{1,3}", "{2,3}"]


def test_pair_split():
    cx = IncidenceComplex.general_position(4, 2)
    s = strata(cx, [DivisorClass.of(f"D{i + 1}") for i in range(4)])[0]
    sp = split_stratum(s, cx)
    assert (sp.part1, sp.part2) == ((0,), (1,))


def test_four_split():
    cx = IncidenceComplex.general_position(5, 4)
    s = next(x for x in strata(cx, [DivisorClass.of(f"D{i + 1}") for i in range(5)]) if x.indices == (0, 1, 2, 3))
    sp = split_stratum(s, cx)
    assert (sp.part1, sp.part2) == ((0, 1), (2, 3))
    assert split_bound(4) == 2


def test_common_component_blocks_split():
    cx = IncidenceComplex.generated_by(2, [(0, 1)], common_pairs=[(0, 1)])
    s = strata(cx, [cls(A=1), cls(B=1)])[0]
    res = split_stratum(s, cx)
    assert isinstance(res, Unsplittable) and not res


def test_validation():
    with pytest.raises(InputError):
        IncidenceComplex(2, frozenset({frozenset({0})}))  # component 2 missing
    with pytest.raises(InputError):
        IncidenceComplex(3, frozenset(map(frozenset, [{0}, {1}, {2}, {0, 1, 2}])))  # not closed
    with pytest.raises(InputError):
        IncidenceComplex(2, frozenset(map(frozenset, [{0}, {1}, {5}])))
    with pytest.raises(InputError):
        compute_m(IncidenceComplex(0, frozenset()))


complexes = st.integers(2, 7).flatmap(lambda n: st.tuples(
    st.just(n),
    st.lists(st.sets(st.integers(0, n - 1), min_size=1, max_size=n), max_size=5),
    st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(lambda p: p[0] != p[1]), max_size=3)))


@given(complexes)
def test_downward_closed_and_m(data):
    n, sets, pairs = data
    cx = IncidenceComplex.generated_by(n, sets, common_pairs=pairs)
    for s in cx.meets:
        for k in range(1, len(s)):
            for t in itertools.combinations(sorted(s), k):
                assert frozenset(t) in cx.meets
    m = compute_m(cx)
    assert m == max(len(s) for s in cx.meets)
    if m < n:
        bigger = IncidenceComplex.generated_by(n, list(sets) + [range(m + 1)], common_pairs=pairs)
        assert compute_m(bigger) > m


@given(complexes)
def test_splits_respect_bound_and_common_pairs(data):
    n, sets, pairs = data
    cx = IncidenceComplex.generated_by(n, sets, common_pairs=pairs)
    m = compute_m(cx)
    for s in strata(cx, [DivisorClass.of(f"D{i}") for i in range(n)]):
        for p1, p2 in candidate_splits(s, cx):
            assert sorted(p1 + p2) == list(s.indices)
            assert len(p1) <= split_bound(m) and len(p2) <= split_bound(m)
            assert not any(frozenset((a, b)) in cx.common_pairs for a in p1 for b in p2)
        sp = split_stratum(s, cx)
        assert isinstance(sp, (Split, Unsplittable))
