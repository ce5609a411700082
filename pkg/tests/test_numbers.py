from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ceei.numbers import close, number_to_json, parse_number, profiles_equal, ratio_cmp


def test_parse_number_modes():
    assert parse_number("3/4") == 0.75
    assert parse_number("3/4", exact=True) == Fraction(3, 4)
    assert parse_number(2, exact=True) == Fraction(2)
    assert parse_number(-1.5) == -1.5
    with pytest.raises(ValueError):
        parse_number(float("nan"))
    with pytest.raises(ValueError):
        parse_number(True)
    with pytest.raises(ZeroDivisionError):
        parse_number("1/0")


def test_number_to_json_round_trip():
    assert number_to_json(Fraction(5, 6)) == "5/6"
    assert number_to_json(Fraction(4, 2)) == 2
    assert number_to_json(0.25) == 0.25
    text = number_to_json(Fraction(-12, 5))
    assert parse_number(text, exact=True) == Fraction(-12, 5)


def test_close_and_profiles_equal_exact_mode():
    assert close(Fraction(1, 3), Fraction(1, 3), 0)
    assert not close(Fraction(1, 3), Fraction(1, 3) + Fraction(1, 10**12), 0)
    assert profiles_equal((1.0, 2.0), (1.0, 2.0 + 1e-8), 1e-6)
    assert not profiles_equal((1.0,), (1.0, 2.0), 1e-6)


nonzero = st.fractions(min_value=-50, max_value=50).filter(lambda f: f != 0)


@given(st.fractions(min_value=-50, max_value=50), nonzero,
       st.fractions(min_value=-50, max_value=50), nonzero)
@settings(max_examples=200, deadline=None)
def test_ratio_cmp_matches_exact_division(n1, d1, n2, d2):
    want = (Fraction(n1, d1) > Fraction(n2, d2)) - (Fraction(n1, d1) < Fraction(n2, d2))
    assert ratio_cmp(n1, d1, n2, d2) == want


@given(st.fractions(min_value=0, max_value=50), nonzero.filter(lambda f: f > 0))
@settings(max_examples=50, deadline=None)
def test_ratio_cmp_infinity_convention(num, den):
    # a zero denominator compares above every finite ratio and ties with itself
    assert ratio_cmp(num, 0, num, den) == 1
    assert ratio_cmp(num, den, num, 0) == -1
    assert ratio_cmp(num, 0, num + 1, 0) == 0
