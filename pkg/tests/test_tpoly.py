from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from peterson.errors import ParseError
from peterson.tpoly import ONE, T, ZERO, TPoly, frac

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)
polys = st.lists(rationals, max_size=5).map(TPoly)


@pytest.mark.parametrize("coeffs, text", [
    ([], "0"),
    ([0, 1], "t"),
    ([0, 0, 3], "3t^2"),
    ([Fraction(4, 3), 2], "4/3 + 2t"),
    ([1, -1], "1 - t"),
    ([0, Fraction(-1, 2)], "-1/2t"),
    ([2, 0, 0], "2"),
])
def test_format(coeffs, text):
    assert TPoly(coeffs).format() == text


def test_normalized():
    p = TPoly([1, 2, 0, 0])
    assert p.coeffs == (1, 2)
    assert TPoly([0, 0]).degree == -1
    assert not TPoly([0])


def test_frac_parsing():
    assert frac("3/4") == Fraction(3, 4)
    assert frac(2) == 2
    with pytest.raises(ParseError):
        frac("three")


def test_div_monomial():
    q, r = TPoly([0, 4, 6]).div_monomial(2, 1)
    assert q == TPoly([2, 3]) and not r
    q, r = TPoly([1, 4]).div_monomial(2, 1)
    assert r == TPoly([1])


def test_evaluate():
    assert (T * 3 + 1)(2) == 7
    assert (T ** 3)(Fraction(1, 2)) == Fraction(1, 8)


@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == ZERO
    assert a * ONE == a


@given(polys)
def test_json_roundtrip(p):
    assert TPoly.from_json(p.to_json()) == p


@given(polys, polys)
def test_degree_of_product(a, b):
    if a and b:
        assert (a * b).degree == a.degree + b.degree
