"""The action of the toroidal algebra on the tensor module, and its consistency checks."""

from __future__ import annotations

from fractions import Fraction
from typing import Dict

from ..algebra import AlgebraElement, bracket, check_key, d_eps_correction
from ..scalars import ParamContext, accumulate
from .fields import (D_EPS, D_PLAIN, EField, Field, GField, K_EPS, K_PLAIN, NormalOrdered,
                     Product, Scaled, Sum, Deriv, d_field)
from .heisenberg import D, K
from .module import FockModule, MKey, ModuleVector, Vec, apply_linear


class RealizationError(ValueError):
    """An element outside the realized algebra."""


class Realization:
    """rho: the toroidal algebra acting on one tensor module.

    ``mu_shift`` perturbs mu inside the module operators only (fault injection).
    """

    def __init__(self, ctx: ParamContext, mu_shift: Fraction = Fraction(0)):
        self.ctx = ctx
        self.mod_ctx = ctx.replace(mu=ctx.mu + mu_shift) if mu_shift else ctx
        self.mod = FockModule(self.mod_ctx)
        self._d_fields: Dict[int, Field] = {}

    def d_field(self, n: int) -> Field:
        f = self._d_fields.get(n)
        if f is None:
            f = self._d_fields[n] = d_field(n, self.mod_ctx)
        return f

    def _rho_basis(self, akey: tuple, key: MKey) -> Vec:
        mod, eps = self.mod, self.mod.eps
        ctx = self.mod_ctx
        tag = akey[0]
        if tag == "K0":
            return {key: ctx.ell}
        if tag == "K1":
            return mod.heis_on(K, 0, key)
        if tag == "D1":
            return mod.heis_on(D, eps - 1, key)
        if tag == "D0":
            out = {k: -c for k, c in mod.lf_on(eps - 1, key).items()}
            if eps == 1:
                accumulate(out, key, ctx.mu * ctx.ell)
            return out
        if tag == "G":
            _, n, m, a = akey
            return Product(GField(a), EField(m)).coeff(eps - n - 1, key, mod)
        if tag == "KF":
            _, n, m = akey
            if m == 0:
                return {k: c * Fraction(-1, n) for k, c in mod.heis_on(K, n, key).items()}
            return {k: c * ctx.ell / m for k, c in mod.e_on(m, n, key).items()}
        if tag == "DT":
            _, n, m = akey
            if m == 0:
                return {k: c * (n - eps + 1) for k, c in mod.heis_on(D, n, key).items()}
            out = dict(self.d_field(m).coeff(2 * eps - n - 2, key, mod))
            corr = d_eps_correction(n, m, ctx)
            if corr:
                for k, c in mod.e_on(m, n, key).items():
                    accumulate(out, k, -corr * ctx.ell / m * c)
            return out
        raise RealizationError(f"cannot realize key {akey!r}")

    def rho_basis(self, akey: tuple, key: MKey) -> Vec:
        ck = (akey, key)
        hit = self.mod.rho_cache.get(ck)
        if hit is None:
            hit = self._rho_basis(akey, key)
            self.mod.rho_cache[ck] = hit
        return hit

    def apply(self, x: AlgebraElement, v: Vec) -> Vec:
        if len(x) == 1:
            ((akey, a),) = x.items()
            out = self.apply_key(akey, v)
            return out if a == 1 else {k: a * c for k, c in out.items()}
        out: Vec = {}
        for akey, a in x.items():
            for k, c in apply_linear(lambda b: self.rho_basis(akey, b), v).items():
                accumulate(out, k, a * c)
        return out

    def apply_key(self, akey: tuple, v: Vec) -> Vec:
        return apply_linear(lambda b: self.rho_basis(akey, b), v)


def toroidal_action(x: AlgebraElement, v: ModuleVector, ctx: ParamContext,
                    realization: Realization = None) -> ModuleVector:
    """rho(x) v."""
    rz = realization or Realization(ctx)
    for key in x:
        check_key(key, ctx.epsilon, ctx.base_algebra.dim)
    return ModuleVector._wrap(rz.apply(x, dict(v.items())))


def commutator_residual_vec(x: AlgebraElement, y: AlgebraElement, v: Vec,
                            rz: Realization, bracket_ctx: ParamContext) -> Vec:
    xy = rz.apply(x, rz.apply(y, v))
    yx = rz.apply(y, rz.apply(x, v))
    br = rz.apply(bracket(x, y, bracket_ctx), v)
    out = dict(xy)
    for k, c in yx.items():
        accumulate(out, k, -c)
    for k, c in br.items():
        accumulate(out, k, -c)
    return out


def realization_commutator_residual(x: AlgebraElement, y: AlgebraElement, v: ModuleVector,
                                    ctx: ParamContext, realization: Realization = None) -> ModuleVector:
    """rho(x)rho(y)v - rho(y)rho(x)v - rho([x, y])v."""
    rz = realization or Realization(ctx)
    return ModuleVector._wrap(commutator_residual_vec(x, y, dict(v.items()), rz, ctx))


# -- operator identities on the Heisenberg side -------------------------------

def _diff(a: Vec, b: Vec) -> Vec:
    out = dict(a)
    for k, c in b.items():
        accumulate(out, k, -c)
    return out


def normal_order_shift_residual(p: int, v: ModuleVector, mod: FockModule) -> ModuleVector:
    """z^p coefficient of (1/ell)(:k^eps d^eps: - z^{2eps} :k d:) - eps(eps-1)/2 z^{2eps-2}."""
    eps, inv = mod.eps, 1 / mod.ctx.ell
    lhs = Sum((Scaled(NormalOrdered(K_EPS, D_EPS), inv),
               Scaled(NormalOrdered(K_PLAIN, D_PLAIN), -inv, 2 * eps)))
    w = dict(v.items())
    out = lhs.apply(p, w, mod)
    if p == 2 * eps - 2:
        out = _diff(out, {k: c * Fraction(eps * (eps - 1), 2) for k, c in w.items()})
    return ModuleVector._wrap(out)


EXP_CONDITIONS = ("unit", "product", "derivative")


def exp_field_conditions_residual(n: int, m: int, p: int, v: ModuleVector, mod: FockModule,
                                  parts=EXP_CONDITIONS) -> Dict[str, ModuleVector]:
    """z^p coefficients of E^0 - 1, E^{nk}E^{mk} - E^{(n+m)k} and
    z^eps d/dz E^{nk} - (1/ell) :(nk)^eps(z) E^{nk}(z):, applied to v.

    ``parts`` selects which of the three conditions to evaluate.
    """
    w = dict(v.items())
    out = {}
    if "unit" in parts:
        e0 = EField(0).apply(p, w, mod)
        if p == 0:
            e0 = _diff(e0, w)
        out["unit"] = ModuleVector._wrap(e0)
    if "product" in parts:
        prod = NormalOrdered(EField(n), EField(m)).apply(p, w, mod)
        direct = EField(n + m).apply(p, w, mod)
        out["product"] = ModuleVector._wrap(_diff(prod, direct))
    if "derivative" in parts:
        deriv = Deriv(EField(n)).apply(p, w, mod)
        rhs = Scaled(NormalOrdered(K_EPS, EField(n)), Fraction(n) / mod.ctx.ell).apply(p, w, mod)
        out["derivative"] = ModuleVector._wrap(_diff(deriv, rhs))
    return out
