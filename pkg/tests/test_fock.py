from fractions import Fraction

import pytest

from conftest import ctx_for
from toroidal.algebra import D0Shift, D1Shift, DTilde, K0, K1, KForm, TorusG, basis_keys, element
from toroidal.fock.action import (Realization, exp_field_conditions_residual,
                                  normal_order_shift_residual, realization_commutator_residual,
                                  toroidal_action)
from toroidal.fock.heisenberg import D, K, Heisenberg
from toroidal.fock.module import FockModule, ModuleVector, basis_vectors, degree, fock_vectors
from toroidal.fock.tmodule import (degree_zero_keys, degree_zero_module_compare, rho_on_top,
                                   t_module_b, tg0_formula)
from toroidal.fock.verma import VermaModule

F = Fraction
TOP = ((), 0, (), 0)


def vec(key, c=1):
    return ModuleVector({key: c})


# -- Verma factor ----------------------------------------------------------------

def test_verma_virasoro_norms(g_sl2):
    beta, c = F(2, 3), F(5)
    m = VermaModule(g_sl2, F(2), c, beta)
    assert m.act(0, 1, (((-1, 0),)), 0) == {((), 0): 2 * beta}
    assert m.act(0, 2, (((-2, 0),)), 0) == {((), 0): 4 * beta + c / 2}
    assert m.act(0, 0, (), 1) == {((), 1): beta}


def test_verma_current_norm(g_sl2):
    ell = F(3)
    m = VermaModule(g_sl2, ell, F(0), F(0))
    # u_a(1) u_b(-1) w = [u_a, u_b] w + ell (a, b) w
    for a in range(3):
        for b in range(3):
            want = {}
            for c, x in g_sl2.bracket(a, b).items():
                for j, y in g_sl2.module.act(c, 0).items():
                    want[((), j)] = want.get(((), j), 0) + x * y
            want[((), 0)] = want.get(((), 0), 0) + ell * g_sl2.form(a, b)
            want = {k: v for k, v in want.items() if v}
            assert m.act(a + 1, 1, (((-1, b + 1),)), 0) == want


def test_verma_words_are_ordered(g_sl2):
    m = VermaModule(g_sl2, F(1), F(0), F(0))
    out = m.act(0, -2, (((-1, 1),)), 0)
    assert out == {(((-2, 0), (-1, 1)), 0): 1}


# -- Heisenberg factor -----------------------------------------------------------

def test_heisenberg_zero_modes():
    h = Heisenberg(F(2), F(1, 3))
    assert h.act(K, 0, (), 0) == {}
    assert h.act(D, 0, (), 2) == {((), 2): F(7, 3)}


def test_heisenberg_pairing():
    h = Heisenberg(F(2), F(0))
    v = h.act(D, -2, (), 0)
    assert h.apply(K, 2, v) == {((), 0): 4}
    assert h.apply(D, 2, v) == {}


def test_exponential_field_modes():
    ell = F(3)
    h = Heisenberg(ell, F(0))
    assert h.e_coeff(0, 0, (), 0) == {((), 0): 1}
    assert h.e_coeff(0, 1, (), 0) == {}
    assert h.e_coeff(2, 0, (), 1) == {((), 3): 1}
    assert h.e_coeff(2, -1, (), 0) == {(((-1, K),), 2): F(2) / ell}
    # E^{nk}(-2) on the vacuum: (n/ell) k(-2)/2 + (n/ell)^2 k(-1)^2/2
    assert h.e_coeff(3, -2, (), 0) == {(((-2, K),), 3): F(1, 2), (((-1, K), (-1, K)), 3): F(1, 2)}


def test_exponential_annihilates_against_d():
    h = Heisenberg(F(1), F(0))
    # the annihilation part of E^{nk} sees d(-1): E^{nk}(1) d(-1) vac = -n vac
    assert h.e_coeff(2, 1, (((-1, D),)), 0) == {((), 2): -2}


# -- enumeration -------------------------------------------------------------------

def test_enumeration_counts(g_sl2):
    ctx = ctx_for(0, g=g_sl2)
    keys = basis_vectors(ctx, 1, [0])
    # degree 0: 2 (dim U); degree 1: 4 Verma creators x 2 + 2 Heisenberg creators x 2
    assert len(keys) == 2 + 8 + 4
    assert all(degree(k) <= 1 for k in keys)
    assert len(fock_vectors(2, [0, 1])) == 2 * (1 + 2 + 5)


# -- the realization ------------------------------------------------------------------

def test_central_elements_act_by_scalars():
    ctx = ctx_for(2, mu=F(1, 3), ell=F(5, 2))
    rz = Realization(ctx)
    v = vec(((), 0, (((-1, D),)), 1))
    assert toroidal_action(element({K0: 1}), v, ctx, rz) == v.scale(F(5, 2))
    assert toroidal_action(element({K1: 1}), vec(TOP), ctx, rz).is_zero()


def test_t_module_weight_matches_d0_on_top():
    ctx = ctx_for(1, mu=F(1, 3), ell=F(2), alpha=F(1, 5), beta=F(7))
    assert rho_on_top(Realization(ctx), D0Shift, 0, 0) == {(0, 0): ctx.mu * ctx.ell - ctx.beta}
    assert t_module_b(ctx) == F(2, 3) - 7


def test_d0_lowers_the_top_away_from_eps1():
    ctx = ctx_for(2, mu=F(1, 3), ell=F(2), beta=F(7))
    assert rho_on_top(Realization(ctx), D0Shift, 0, 0) == {}


def test_degree_zero_formula_agrees_with_rho():
    for eps in (-2, 0, 1, 3):
        ctx = ctx_for(eps, mu=F(1, 3), ell=F(2), alpha=F(1, 5), beta=F(7))
        rz = Realization(ctx)
        for key in degree_zero_keys(ctx, 2):
            for r in (-1, 0, 2):
                assert rho_on_top(rz, key, r, 0) == tg0_formula(key, r, 0, ctx), (eps, key, r)


def test_degree_zero_compare_reports_and_detects_a_wrong_weight():
    ctx = ctx_for(1, mu=F(1, 3), ell=F(2), alpha=F(1, 5), beta=F(7))
    good = degree_zero_module_compare(range(-2, 3), range(-2, 3), ctx)
    assert good.ok and good.cases
    bad = degree_zero_module_compare(range(-2, 3), range(-2, 3), ctx, b=t_module_b(ctx) + 1)
    assert not bad.ok


def test_degree_zero_keys_at_eps1_include_both_derivations():
    ctx = ctx_for(1)
    keys = degree_zero_keys(ctx, 1)
    assert D0Shift in keys and D1Shift in keys and DTilde(0, 0) not in keys


@pytest.mark.parametrize("eps", [-1, 0, 1, 2])
def test_commutator_examples(eps, g_sl2):
    ctx = ctx_for(eps, mu=F(1, 3), ell=F(2), alpha=F(1, 5), beta=F(7), g=g_sl2)
    rz = Realization(ctx)
    pairs = [(TorusG(1, 0, 0), TorusG(-1, 1, 2)), (DTilde(1, 1, eps), TorusG(-1, -1, 1)),
             (DTilde(1, -1, eps), DTilde(-1, 1, eps)), (D0Shift, KForm(1, 1)),
             (D1Shift, DTilde(0, 1, eps)) if (0, 1) != (0, 0) else (D1Shift, K0)]
    vectors = [TOP, ((((-1, 1),)), 1, (), 0), ((), 0, (((-1, K),)), -1)]
    for x, y in pairs:
        for v in vectors:
            res = realization_commutator_residual(element({x: 1}), element({y: 1}), vec(v), ctx, rz)
            assert res.is_zero(), (x, y, v, res)


def test_commutator_detects_a_shifted_mu(g_sl2):
    ctx = ctx_for(2, mu=F(1, 3), ell=F(2), alpha=F(1, 5), beta=F(7), g=g_sl2)
    rz = Realization(ctx, mu_shift=F(1))
    bad = 0
    for x in basis_keys(1, ctx):
        for y in basis_keys(1, ctx):
            if x < y:
                res = realization_commutator_residual(element({x: 1}), element({y: 1}), vec(TOP), ctx, rz)
                bad += not res.is_zero()
    assert bad


# -- operator identities ---------------------------------------------------------

@pytest.mark.parametrize("eps", [-1, 0, 1, 2, 3])
def test_normal_order_shift(eps):
    mod = FockModule(ctx_for(eps, ell=F(3, 2), alpha=F(1, 2)))
    for word, r in fock_vectors(3, [-1, 0, 1]):
        v = vec(((), 0, word, r))
        for p in range(2 * eps - 6, 2 * eps + 3):
            assert normal_order_shift_residual(p, v, mod).is_zero(), (word, r, p)


@pytest.mark.parametrize("eps", [-1, 0, 1, 2])
def test_exponential_field_conditions(eps):
    mod = FockModule(ctx_for(eps, ell=F(2), alpha=F(1, 3)))
    for word, r in fock_vectors(2, [0, 1]):
        v = vec(((), 0, word, r))
        for n in (-1, 0, 2):
            for m in (-2, 1):
                for p in range(-3, 4):
                    res = exp_field_conditions_residual(n, m, p, v, mod)
                    assert all(x.is_zero() for x in res.values()), (word, r, n, m, p, res)


def test_exponential_condition_parts_are_selectable():
    mod = FockModule(ctx_for(0))
    res = exp_field_conditions_residual(1, 1, 0, vec(TOP), mod, parts=("unit",))
    assert set(res) == {"unit"}
