"""The eps-Pochhammer symbol and the two binomial-type identities built on it."""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Tuple

from .scalars import RationalLike, to_q


def eps_pochhammer(a: RationalLike, r: int, eps: int) -> Fraction:
    """a^{(r)}_eps = a (a + eps - 1) (a + 2(eps - 1)) ... with r factors."""
    if r < 0:
        raise ValueError("r must be nonnegative")
    a = to_q(a)
    out = Fraction(1)
    step = eps - 1
    for s in range(r):
        out *= a + s * step
    return out


def newton_sides(a: RationalLike, b: RationalLike, p: int, eps: int) -> Tuple[Fraction, Fraction]:
    """(a+b)^{(p)} and its binomial expansion in a^{(i)} b^{(p-i)}."""
    a, b = to_q(a), to_q(b)
    rhs = sum((comb(p, i) * eps_pochhammer(a, i, eps) * eps_pochhammer(b, p - i, eps)
               for i in range(p + 1)), Fraction(0))
    return eps_pochhammer(a + b, p, eps), rhs


def newton_residual(a: RationalLike, b: RationalLike, p: int, eps: int) -> Fraction:
    lhs, rhs = newton_sides(a, b, p, eps)
    return lhs - rhs


def lemma22_sides(p: int, a: RationalLike, b: RationalLike, alpha: RationalLike,
                  beta: RationalLike, eps: int) -> Tuple[Fraction, Fraction]:
    """The two sides of the re-expansion around alpha + beta."""
    a, b, alpha, beta = (to_q(x) for x in (a, b, alpha, beta))
    lhs = sum((comb(p, r) * alpha ** (p - r) * eps_pochhammer(a, p - r, eps)
               * (-beta) ** r * eps_pochhammer(b, r, eps) for r in range(p + 1)), Fraction(0))
    shifted = -a - b - (p - 1) * (eps - 1)
    rhs = sum((comb(p, s) * (alpha + beta) ** (p - s) * eps_pochhammer(a, p - s, eps)
               * beta ** s * eps_pochhammer(shifted, s, eps) for s in range(p + 1)), Fraction(0))
    return lhs, rhs


def lemma22_residual(p: int, a: RationalLike, b: RationalLike, alpha: RationalLike,
                     beta: RationalLike, eps: int) -> Fraction:
    lhs, rhs = lemma22_sides(p, a, b, alpha, beta, eps)
    return lhs - rhs
