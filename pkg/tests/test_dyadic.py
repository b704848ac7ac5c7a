from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from nestcan.dyadic import DyadicRational

dyadics = st.builds(DyadicRational, st.integers(0, 10**6), st.integers(0, 40))


def test_reduced_form():
    assert DyadicRational(6, 3) == DyadicRational(3, 2)
    assert (DyadicRational(6, 3).numerator, DyadicRational(6, 3).log2_denominator) == (3, 2)
    assert DyadicRational(0, 9).log2_denominator == 0
    assert DyadicRational(8, 2) == 2


def test_rendering():
    assert str(DyadicRational(21, 4)) == "21/16"
    assert str(DyadicRational(4, 0)) == "4"
    assert DyadicRational(1, 3).decimal() == "0.125000"
    assert DyadicRational(1, 21).decimal() == "0.000000"
    assert DyadicRational(1, 20).decimal() == "0.000001"


def test_rejects_negative():
    with pytest.raises(ValueError):
        DyadicRational(-1, 0)


def test_from_fraction():
    assert DyadicRational.from_fraction(Fraction(21, 16)) == DyadicRational(21, 4)
    with pytest.raises(ValueError):
        DyadicRational.from_fraction(Fraction(1, 3))


@given(dyadics, dyadics)
def test_arithmetic_matches_fractions(a, b):
    assert (a + b).as_fraction() == a.as_fraction() + b.as_fraction()
    assert (a * b).as_fraction() == a.as_fraction() * b.as_fraction()
    assert (a < b) == (a.as_fraction() < b.as_fraction())
    assert (a == b) == (a.as_fraction() == b.as_fraction())


@given(dyadics)
def test_json_roundtrip(a):
    assert DyadicRational.from_json(a.to_json()) == a
