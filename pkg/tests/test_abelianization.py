from fractions import Fraction
from itertools import combinations_with_replacement

import pytest
from hypothesis import given, settings, strategies as st
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form

from fuchsian_quotients.abelianization import (PreconditionError, abelianize, is_abelian_quotient,
                                               lcm_forced_equal, mids, same_abelianization)
from fuchsian_quotients.arith import lcm_list
from fuchsian_quotients.signatures import sig


def snf_abelianization(g, p, m):
    """Oracle: invariant factors of the relation matrix of the presentation."""
    k = len(m)
    ncols = 2 * g + k + p
    rows = []
    for i, mi in enumerate(m):
        r = [0] * ncols
        r[2 * g + i] = mi
        rows.append(r)
    rows.append([0] * (2 * g) + [1] * (k + p))
    A = Matrix(rows)
    D = smith_normal_form(A, domain=ZZ)
    diag = [abs(D[i, i]) for i in range(min(D.shape))]
    nonzero = [d for d in diag if d != 0]
    rank = ncols - len(nonzero)
    return rank, tuple(sorted(d for d in nonzero if d > 1))


def test_mids_of_worked_multisets():
    assert mids((15, 42, 63)) == (3, 21, 630)
    assert mids((21, 21, 90)) == (3, 21, 630)
    assert mids((11,)) == (11,)


def test_abelianize_examples():
    a = abelianize(sig(0, 0, (15, 42, 63)))
    assert (a.free_rank, a.torsion()) == (0, (3, 21))
    a = abelianize(sig(0, 0, (4, 3, 7)))
    assert (a.free_rank, a.torsion()) == (0, ())
    assert abelianize(sig(3, 0)).free_rank == 6
    a = abelianize(sig(0, 3, (2, 2)))
    assert (a.free_rank, a.torsion()) == (2, (2, 2))


def test_same_abelianization():
    assert same_abelianization(sig(0, 0, (15, 42, 63)), sig(0, 0, (21, 21, 90)))
    assert same_abelianization(sig(0, 0, (4, 3, 7)), sig(0, 0, (2, 3, 7)))
    assert not same_abelianization(sig(0, 0, (2, 3, 7)), sig(0, 0, (2, 2, 2, 3)))


def test_lcm_forced_equal():
    assert lcm_forced_equal(sig(0, 0, (15, 42, 63)), sig(0, 0, (21, 21, 90))) == 630
    assert lcm_forced_equal(sig(0, 0, (2, 3, 7)), sig(0, 0, (2, 3, 7))) == 42
    with pytest.raises(PreconditionError):
        lcm_forced_equal(sig(2, 0, (4, 6)), sig(2, 0, (2, 12)))


cones = st.lists(st.integers(2, 60), min_size=0, max_size=5).map(tuple)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2), st.integers(0, 3), cones)
def test_abelianize_matches_smith_normal_form(g, p, m):
    a = abelianize(sig(g, p, m))
    assert (a.free_rank, a.torsion()) == snf_abelianization(g, p, m)


@given(cones.filter(bool))
def test_mids_chain_and_product(m):
    ms = mids(m)
    prod_m = prod_ms = 1
    for x in m:
        prod_m *= x
    for x in ms:
        prod_ms *= x
    assert prod_m == prod_ms
    assert all(ms[i + 1] % ms[i] == 0 for i in range(len(ms) - 1))
    assert ms[-1] == lcm_list(list(m))


def test_short_multisets_determined_by_mids_and_chi():
    # at most two cones: equal mids and equal reciprocal sums force equality
    pool = [(a,) for a in range(1, 31)] + list(combinations_with_replacement(range(1, 31), 2))
    seen = {}
    for m in pool:
        m2 = tuple(sorted(m + (1,) * (2 - len(m))))
        key = (mids(m2), sum(Fraction(1, x) for x in m2))
        assert seen.setdefault(key, m2) == m2


def test_abelian_quotient_test():
    assert is_abelian_quotient((3,), 0, (3, 21))
    assert is_abelian_quotient((21, 21), 1, (3, 21))
    assert not is_abelian_quotient((9,), 0, (3, 21))
    assert not is_abelian_quotient((3, 3, 3), 0, (3, 21))
    assert is_abelian_quotient((5, 5), 2, ())
