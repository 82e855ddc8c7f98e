from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from fuchsian_quotients.arith import divisors, num_divisors
from fuchsian_quotients.scrape_matrices import (append_patch_rows, build_E, build_F, build_X,
                                                build_Y, is_upper_triangular_after_pivot_permutation,
                                                matrix_check, pivot_of, pivotless_columns, rank,
                                                reduce_twelve_row, twelve_pivot_family)


def test_pivot_of():
    assert pivot_of(1, 30) == 1
    assert pivot_of(2, 12) == 4
    assert pivot_of(12, 12) == 6
    with pytest.raises(ValueError):
        pivot_of(5, 12)


@given(st.integers(1, 2000), st.data())
def test_pivot_is_an_involution(M, data):
    s = data.draw(st.sampled_from(divisors(M)))
    assert pivot_of(pivot_of(s, M), M) == s


def test_small_E_and_F():
    assert build_E(1).entries == ((Fraction(1),),)
    assert build_E(2).entries == ((1, Fraction(1, 2)), (1, 1))
    assert build_F(2).entry(2, 2) == Fraction(1, 2)


def test_X_entries():
    X = build_X(12)
    assert all(X.entry(1, d) == Fraction(1, d) for d in X.index)
    X4 = build_X(4)
    assert X4.entry(2, 2) == 0
    assert X4.entry(2, 4) == Fraction(1, 4)


def test_Y_entries():
    assert build_Y(35) == build_X(35)
    assert build_Y(2).entry(2, 2) == 0
    assert build_Y(12).entry(pivot_of(12, 12), 12) == 0


def test_patch_rows():
    assert len(append_patch_rows(build_F(35)).entries) == num_divisors(35)
    assert len(append_patch_rows(build_F(6)).entries) == num_divisors(6) + 2
    assert len(append_patch_rows(build_F(12)).entries) == num_divisors(12) + 3


def test_rank_basics():
    I = [[int(i == j) for j in range(3)] for i in range(3)]
    assert rank(I) == 3
    assert rank(I + [[0, 0, 0]]) == 3
    assert rank(build_E(30)) == 8


@pytest.mark.parametrize("M", [1, 2, 12, 30, 36, 60, 72, 210, 252, 300])
def test_matrix_report_on_sample_moduli(M):
    r = matrix_check(M)
    assert r.ok(), r
    assert is_upper_triangular_after_pivot_permutation(build_X(M))


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 400), st.data())
def test_X_entries_are_semimultiplicative(M, data):
    ds = divisors(M)
    a = data.draw(st.sampled_from(ds))
    b = data.draw(st.sampled_from([x for x in ds if gcd(x, a) == 1 and M % (a * x) == 0]))
    d = data.draw(st.sampled_from(ds))
    X = build_X(M)
    assert X.entry(a, d) * X.entry(b, d) == Fraction(1, d) * X.entry(a * b, d)


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 120), st.integers(2, 5), st.data())
def test_pivot_entries_do_not_depend_on_the_modulus(M, factor, data):
    M2 = M * factor
    j = data.draw(st.sampled_from(divisors(M)))
    d = data.draw(st.sampled_from(divisors(M)))
    for build in (build_X, build_Y):
        A, B = build(M), build(M2)
        assert A.entry(pivot_of(j, M), d) == B.entry(pivot_of(j, M2), d)


def test_twelve_row_has_a_pivot_in_all_32_cases():
    family = twelve_pivot_family()
    assert len(family) == 32
    patterns = {tuple(M % d == 0 for d in range(1, 13)) for M in family}
    assert len(patterns) == 32
    assert all(reduce_twelve_row(M) != 0 for M in family)


def test_pivotless_columns_of_Y():
    assert pivotless_columns(build_Y(12)) == [2, 3, 12]
    assert pivotless_columns(build_Y(35)) == []
    assert pivotless_columns(build_Y(10)) == [2]
