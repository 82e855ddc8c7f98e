from fractions import Fraction
import math

import pytest
from hypothesis import given, strategies as st

from fuchsian_quotients.signatures import (INF, Signature, SignatureParseError, euler_char,
                                           first_betti, format_signature, is_fuchsian,
                                           isomorphic, normalize, parse_signature, sig)


def test_normalize_folds_genus_and_strips_ones_and_inf():
    assert normalize(Signature(1, 1, (3, 1, INF))) == Signature(0, 4, (3,))
    assert normalize(Signature(0, 0, (2, 3, 7))) == Signature(0, 0, (2, 3, 7))
    assert normalize(Signature(2, 1, (5,))) == Signature(0, 5, (5,))


def test_euler_characteristics_of_worked_triangles():
    assert euler_char(sig(0, 0, (4, 3, 7))) == Fraction(-23, 84)
    assert euler_char(sig(0, 0, (2, 3, 7))) == Fraction(-1, 42)
    assert euler_char(sig(1, 0)) == 0
    assert euler_char(sig(0, 0, (15, 42, 63))) == Fraction(-563, 630)
    assert euler_char(sig(0, 0, (21, 21, 90))) == Fraction(-563, 630)


def test_first_betti():
    assert first_betti(sig(0, 3, (2, 2))) == 2
    assert first_betti(sig(2, 0, (5,))) == 4
    assert first_betti(sig(0, 0, (15, 42, 63))) == 0


def test_is_fuchsian():
    assert is_fuchsian(sig(0, 0, (2, 3, 7)))
    assert not is_fuchsian(sig(0, 2))
    assert not is_fuchsian(sig(0, 0, (2, 3, 5)))


def test_isomorphic_compares_normal_forms():
    assert isomorphic(Signature(1, 1, (3,)), Signature(0, 3, (3,)))
    assert not isomorphic(sig(0, 0, (2, 3, 7)), sig(0, 0, (4, 3, 7)))
    assert not isomorphic(sig(0, 0, (15, 42, 63)), sig(0, 0, (21, 21, 90)))


def test_parse_and_format_round_trip():
    for text in ("(0;0;15,42,63)", "(0;3;2,2)", "(2;0;-)", "(0;4;3)"):
        assert format_signature(parse_signature(text)) == text
    assert parse_signature("(1;1;3,inf)") == Signature(0, 4, (3,))


@pytest.mark.parametrize("text, offset", [
    ("0;0;2,3)", 0), ("(0;0;2,3", 8), ("(0;0;)", 5), ("(0;x;2)", 3), ("(0;0;0,3)", 5),
    ("(0;0;2,3)x", 9),
])
def test_parse_errors_report_offsets(text, offset):
    with pytest.raises(SignatureParseError) as e:
        parse_signature(text)
    assert e.value.offset == offset


raw_signatures = st.builds(
    Signature, st.integers(0, 3), st.integers(0, 3),
    st.lists(st.one_of(st.integers(1, 30), st.just(INF)), max_size=5).map(tuple))


@given(raw_signatures)
def test_normalize_is_idempotent(s):
    assert normalize(normalize(s)) == normalize(s)


@given(raw_signatures)
def test_euler_char_invariant_under_normalize(s):
    assert euler_char(normalize(s)) == euler_char(s)


@given(raw_signatures)
def test_betti_bounded_by_euler_char(s):
    s = normalize(s)
    top = (1 if s.punctures else 2) - euler_char(s)
    assert first_betti(s) <= top
    assert (first_betti(s) == top) == (not s.cones)


def test_inf_cone_counts_as_puncture():
    assert math.isinf(INF)
    assert sig(0, 0, (2, INF)) == Signature(0, 1, (2,))
