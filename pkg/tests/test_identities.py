from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, strategies as st

from toroidal.identities import (eps_pochhammer, lemma22_residual, lemma22_sides,
                                 newton_residual, newton_sides)

q = st.builds(Fraction, st.integers(-40, 40), st.integers(1, 12))


def test_pochhammer_examples():
    assert eps_pochhammer(Fraction(7, 3), 0, -2) == 1
    assert eps_pochhammer(3, 3, 0) == 6
    assert eps_pochhammer(Fraction(1, 2), 3, 2) == Fraction(1, 2) * Fraction(3, 2) * Fraction(5, 2)
    with pytest.raises(ValueError):
        eps_pochhammer(1, -1, 1)


@given(q, st.integers(0, 6))
def test_pochhammer_at_eps1_is_a_power(a, r):
    assert eps_pochhammer(a, r, 1) == a ** r


@given(q, st.integers(0, 6), st.integers(-3, 3))
def test_pochhammer_recursion(a, r, eps):
    assert eps_pochhammer(a, r + 1, eps) == eps_pochhammer(a, r, eps) * (a + r * (eps - 1))


def test_lemma22_examples():
    assert lemma22_residual(0, 5, 7, 1, 2, 3) == 0
    assert lemma22_sides(0, 5, 7, 1, 2, 3) == (1, 1)
    assert lemma22_residual(3, 2, -1, Fraction(1, 2), Fraction(1, 3), 2) == 0


@given(q, q, q, q, st.integers(-2, 3))
def test_lemma22_p1(a, b, alpha, beta, eps):
    assert lemma22_residual(1, a, b, alpha, beta, eps) == 0


@given(st.integers(0, 6), q, q, q, q, st.integers(-2, 3))
def test_lemma22_holds(p, a, b, alpha, beta, eps):
    assert lemma22_residual(p, a, b, alpha, beta, eps) == 0


def test_lemma22_is_sensitive_to_the_shift():
    lhs, _ = lemma22_sides(3, 1, 2, 3, -1, 2)
    _, rhs = lemma22_sides(3, 1, 2, 3, -1, 3)
    assert lhs != rhs


def test_newton_examples():
    assert newton_residual(3, 4, 0, 2) == 0
    assert newton_residual(Fraction(5, 2), -3, 4, -1) == 0
    lhs, rhs = newton_sides(Fraction(5, 2), -3, 4, -1)
    assert lhs == rhs == eps_pochhammer(Fraction(-1, 2), 4, -1)


@given(q, q, st.integers(0, 6))
def test_newton_at_eps1_is_the_binomial_theorem(a, b, p):
    assert sum(comb(p, i) * a ** i * b ** (p - i) for i in range(p + 1)) == (a + b) ** p
    assert newton_residual(a, b, p, 1) == 0


@given(q, q, st.integers(0, 6), st.integers(-2, 3))
def test_newton_holds(a, b, p, eps):
    assert newton_residual(a, b, p, eps) == 0
