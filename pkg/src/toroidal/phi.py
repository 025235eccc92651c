"""The associate phi_eps of the additive formal group and the series built from it."""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Dict, Iterator, List, Tuple

from .identities import eps_pochhammer
from .series import SeriesError, TruncatedSeries, binom

DEFAULT_ORDER = 8


def _apply_T(poly: Dict[int, Fraction], eps: int) -> Dict[int, Fraction]:
    """z2^eps d/dz2 on a Laurent polynomial {exponent: coeff}."""
    return {e + eps - 1: c * e for e, c in poly.items() if e}


def phi_eps(eps: int, order: int = DEFAULT_ORDER, small: str = "z0") -> TruncatedSeries:
    """sum_n z0^n / n! (z2^eps d/dz2)^n z2, by iterating the operator."""
    terms = {}
    poly = {1: Fraction(1)}
    for n in range(order + 1):
        for e, c in poly.items():
            terms[(n, e)] = c / factorial(n)
        poly = _apply_T(poly, eps)
    return TruncatedSeries(terms, order, (small,))


def phi_closed(eps: int, order: int = DEFAULT_ORDER) -> TruncatedSeries:
    """Closed form of the flow: z2 e^z0 at eps = 1, else
    z2 (1 + (1 - eps) z0 z2^(eps-1))^(1/(1-eps))."""
    if eps == 1:
        return TruncatedSeries({(n, 1): Fraction(1, factorial(n)) for n in range(order + 1)}, order)
    x = TruncatedSeries({(1, eps - 1): 1 - eps}, order)
    return x.binomial_power(Fraction(1, 1 - eps)).shift_aux(1)


def associate_axioms_residual(eps: int, order: int = DEFAULT_ORDER, outer_eps: int = None
                              ) -> Tuple[TruncatedSeries, TruncatedSeries]:
    """(phi(z2, 0) - z2, phi(phi(z2, z1), z2') - phi(z2, z1 + z2')).

    ``outer_eps`` builds the outer phi with another eps (fault injection).
    """
    phi = phi_eps(eps, order)
    at_zero = TruncatedSeries({e: c for e, c in phi.terms.items() if e[0] == 0}, order)
    first = at_zero - TruncatedSeries({(0, 1): 1}, order)

    two = ("z1", "z2'")
    z1 = TruncatedSeries({(1, 0, 0): 1}, order, two)
    z2p = TruncatedSeries({(0, 1, 0): 1}, order, two)
    inner = phi.substitute([z1])
    # phi(z2, z1) = z2 (1 + X) with X of positive valuation in z1
    x = inner.shift_aux(-1) - TruncatedSeries({(0, 0, 0): 1}, order, two)
    outer_phi = phi if outer_eps is None else phi_eps(outer_eps, order)
    outer = outer_phi.substitute([z2p], aux_sub=x)
    direct = phi.substitute([z1 + z2p])
    return first, outer - direct


def h_series(eps: int, order: int = DEFAULT_ORDER) -> TruncatedSeries:
    """h(z2, z0) = sum_n eps^{(n)} / (n+1)! z2^{n(eps-1)} z0^n."""
    return TruncatedSeries(
        {(n, n * (eps - 1)): eps_pochhammer(eps, n, eps) / factorial(n + 1)
         for n in range(order + 1)}, order)


def _partitions(n: int, largest: int = None) -> Iterator[List[int]]:
    """Partitions of n as non-increasing part lists."""
    if largest is None:
        largest = n
    if n == 0:
        yield []
        return
    for part in range(min(n, largest), 0, -1):
        for rest in _partitions(n - part, part):
            yield [part] + rest


def h_closed(eps: int, n: int) -> Fraction:
    """h_n from the multinomial sum over partitions r_1 + 2 r_2 + ... = n."""
    if n == 0:
        return Fraction(1)
    total = Fraction(0)
    for parts in _partitions(n):
        mult: Dict[int, int] = {}
        for p in parts:
            mult[p] = mult.get(p, 0) + 1
        count = sum(mult.values())
        term = Fraction((-1) ** count * factorial(count))
        for m, r in mult.items():
            term *= (eps_pochhammer(eps, m, eps) / factorial(m + 1)) ** r / factorial(r)
        total += term
    return total


def h_inverted(eps: int, nmax: int) -> List[Fraction]:
    """h_n read off from the exact inverse of ``h_series``."""
    inv = h_series(eps, nmax).inverse()
    out = []
    for n in range(nmax + 1):
        part = inv.small_part((n,))
        stray = set(part) - {n * (eps - 1)}
        if stray:
            raise SeriesError(f"inverse has unexpected z2-exponents {sorted(stray)} at z0^{n}")
        out.append(part.get(n * (eps - 1), Fraction(0)))
    return out


def h_inverse_coeffs(eps: int, nmax: int = DEFAULT_ORDER) -> List[Fraction]:
    """h_0 ... h_nmax, computed twice; raises if the two computations disagree."""
    closed = [h_closed(eps, n) for n in range(nmax + 1)]
    inverted = h_inverted(eps, nmax)
    if closed != inverted:
        bad = next(n for n in range(nmax + 1) if closed[n] != inverted[n])
        raise ArithmeticError(
            f"h_{bad} mismatch at eps={eps}: closed {closed[bad]}, inverted {inverted[bad]}")
    return closed


def f_eps(eps: int, order: int = DEFAULT_ORDER) -> TruncatedSeries:
    """f_eps(z2, z): z2^{1-eps}((1+z)^{1-eps} - 1)/(1-eps), or log(1+z) at eps = 1."""
    if eps == 1:
        terms = {(k, 0): Fraction((-1) ** (k + 1), k) for k in range(1, order + 1)}
    else:
        terms = {(k, 1 - eps): binom(1 - eps, k) / (1 - eps) for k in range(1, order + 1)}
    return TruncatedSeries(terms, order, ("z",))


def f_eps_composition_residual(eps: int, order: int = DEFAULT_ORDER) -> TruncatedSeries:
    """f_eps(z2, phi_eps(z2, z0)/z2 - 1) - z0."""
    phi = phi_eps(eps, order)
    x = phi.shift_aux(-1) - TruncatedSeries({(0, 0): 1}, order)
    f = f_eps(eps, order)
    return f.substitute([x]) - TruncatedSeries({(1, 0): 1}, order)


def u_minus1_correction(eps: int, nmax: int = DEFAULT_ORDER) -> List[Fraction]:
    """c_n = sum_{i=0}^{n+1} eps^{(i)}/i! h_{n-i+1}, the coefficient of
    z^{(n+1)(eps-1)} Y(u_n v) subtracted from the normally ordered product."""
    h = h_inverse_coeffs(eps, nmax + 1)
    return [sum((eps_pochhammer(eps, i, eps) / factorial(i) * h[n - i + 1]
                 for i in range(n + 2)), Fraction(0)) for n in range(nmax + 1)]
