from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from toroidal.series import SeriesError, TruncatedSeries, binom, series_from

coeffs = st.dictionaries(st.tuples(st.integers(0, 4), st.integers(-3, 3)),
                         st.fractions(max_denominator=9), max_size=6)


def S(terms, order=6):
    return TruncatedSeries(terms, order)


def test_binom():
    assert binom(5, 2) == 10
    assert binom(Fraction(1, 2), 2) == Fraction(-1, 8)
    assert binom(-1, 3) == -1


def test_truncation_and_zero_coefficients():
    s = S({(0, 1): 1, (7, 0): 5, (2, 0): 0})
    assert s.terms == {(0, 1): 1}
    assert s.valuation() == 0


@given(coeffs, coeffs, coeffs)
def test_ring_laws(a, b, c):
    x, y, z = S(a), S(b), S(c)
    assert x * (y + z) == x * y + x * z
    assert (x * y) * z == x * (y * z)
    assert x * y == y * x
    assert (x - x).is_zero()


def test_inverse_of_geometric_series():
    one_minus = S({(0, 0): 1, (1, 1): -1})
    inv = one_minus.inverse()
    assert inv == S({(n, n): 1 for n in range(7)})
    assert one_minus * inv == S({(0, 0): 1})


@given(coeffs)
def test_inverse_is_two_sided(a):
    a = {k: v for k, v in a.items() if k[0] > 0}
    a[(0, 2)] = Fraction(3)
    x = S(a)
    assert x * x.inverse() == S({(0, 0): 1})


def test_inverse_needs_monomial_constant_term():
    with pytest.raises(SeriesError):
        S({(0, 0): 1, (0, 1): 1}).inverse()


def test_binomial_power_matches_repeated_product():
    x = S({(1, 0): 1, (2, 1): Fraction(1, 2)})
    assert x.binomial_power(3) == (S({(0, 0): 1}) + x).power(3)
    with pytest.raises(SeriesError):
        S({(0, 0): 1}).binomial_power(2)


def test_substitute_into_exponential():
    exp = S({(n, 0): Fraction(1, 1) / __import__("math").factorial(n) for n in range(7)})
    two = TruncatedSeries({(1, 0, 0): 1}, 6, ("a", "b"))
    b = TruncatedSeries({(0, 1, 0): 1}, 6, ("a", "b"))
    lhs = exp.substitute([two + b])
    rhs = exp.substitute([two]) * exp.substitute([b])
    assert lhs == rhs.truncate(6)


def test_text_form_is_sorted():
    assert S({(1, -1): Fraction(1, 2), (0, 1): 1}).to_text() == "1*z2^1 + 1/2*z0^1*z2^-1"
    assert series_from([((0, 0), 2)], 3).to_text() == "2"
