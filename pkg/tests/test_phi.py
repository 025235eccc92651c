from fractions import Fraction
from math import comb, factorial

import pytest

from toroidal.phi import (associate_axioms_residual, f_eps, f_eps_composition_residual,
                          h_closed, h_inverse_coeffs, h_inverted, h_series, phi_closed, phi_eps,
                          u_minus1_correction)
from toroidal.series import TruncatedSeries

EPS = range(-2, 4)


def bernoulli_over_factorial(nmax):
    """Coefficients of z/(e^z - 1) by inverting sum z^n/(n+1)! directly."""
    a = [Fraction(1, factorial(n + 1)) for n in range(nmax + 1)]
    b = [Fraction(1)]
    for n in range(1, nmax + 1):
        b.append(-sum(a[k] * b[n - k] for k in range(1, n + 1)))
    return b


def test_phi_examples():
    assert phi_eps(0, 8) == TruncatedSeries({(0, 1): 1, (1, 0): 1}, 8)
    assert phi_eps(1, 8) == TruncatedSeries({(n, 1): Fraction(1, factorial(n)) for n in range(9)}, 8)
    assert phi_eps(2, 8) == TruncatedSeries({(n, n + 1): 1 for n in range(9)}, 8)


@pytest.mark.parametrize("eps", EPS)
def test_phi_matches_closed_flow_and_truncates_stably(eps):
    assert phi_eps(eps, 8) == phi_closed(eps, 8)
    assert phi_eps(eps, 8).truncate(7) == phi_eps(eps, 7)


@pytest.mark.parametrize("eps", EPS)
@pytest.mark.parametrize("order", [6, 8])
def test_associate_axioms(eps, order):
    unit, comp = associate_axioms_residual(eps, order)
    assert unit.is_zero() and comp.is_zero()


def test_associate_axioms_detect_a_wrong_outer_map():
    assert not associate_axioms_residual(2, 6, outer_eps=3)[1].is_zero()


def test_h_series_examples():
    assert h_series(0, 8) == TruncatedSeries({(0, 0): 1}, 8)
    assert h_series(1, 8) == TruncatedSeries({(n, 0): Fraction(1, factorial(n + 1)) for n in range(9)}, 8)


@pytest.mark.parametrize("eps", EPS)
def test_h_closed_equals_inversion(eps):
    coeffs = h_inverse_coeffs(eps, 8)
    assert coeffs[0] == 1
    assert coeffs[1] == Fraction(-eps, 2)
    assert coeffs == h_inverted(eps, 8)
    inv = TruncatedSeries({(n, n * (eps - 1)): c for n, c in enumerate(coeffs)}, 8)
    assert h_series(eps, 8) * inv == TruncatedSeries({(0, 0): 1}, 8)


def test_h_at_eps1_is_bernoulli():
    assert h_inverse_coeffs(1, 8) == bernoulli_over_factorial(8)
    assert h_inverse_coeffs(1, 3) == [1, Fraction(-1, 2), Fraction(1, 12), 0]


def test_h_at_eps0_is_trivial():
    assert h_inverse_coeffs(0, 8) == [1] + [0] * 8
    assert all(h_closed(0, n) == 0 for n in range(1, 9))


def test_f_eps_examples():
    assert f_eps(0, 6) == TruncatedSeries({(1, 1): 1}, 6, ("z",))
    assert f_eps(1, 6) == TruncatedSeries({(k, 0): Fraction((-1) ** (k + 1), k) for k in range(1, 7)}, 6, ("z",))
    # z2^{-1} z/(1+z)
    assert f_eps(2, 6) == TruncatedSeries({(k, -1): (-1) ** (k + 1) for k in range(1, 7)}, 6, ("z",))


@pytest.mark.parametrize("eps", EPS)
def test_f_eps_inverts_phi(eps):
    assert f_eps_composition_residual(eps, 8).is_zero()


@pytest.mark.parametrize("eps", [-3, -2, -1, 0, 1, 2, 3, 5])
def test_u_minus1_correction_polynomials(eps):
    c = u_minus1_correction(eps, 3)
    e = Fraction(eps)
    assert c[0] == e / 2
    assert c[1] == (5 * e - 4) * e / 12
    assert c[2] == (3 * e * e - 5 * e + 2) * e / 8


def test_u_minus1_correction_vanishes_at_eps0():
    assert u_minus1_correction(0, 6) == [0] * 7


def test_pochhammer_binomial_identity_used_by_the_flow():
    # (z2^eps d/dz2)^n z2 = eps^{(n)} z2^{n(eps-1)+1}, hence phi_n coefficients
    for eps in EPS:
        phi = phi_eps(eps, 5)
        for n in range(6):
            want = Fraction(1, factorial(n))
            for s in range(n):
                want *= 1 + s * (eps - 1)
            assert phi.coefficient((n, n * (eps - 1) + 1)) == want
    assert comb(4, 2) == 6
