"""Fields on the tensor module and their exact coefficients.

A field F(z) = sum_p F_p z^p is described by an immutable handle.  Each handle
has an ``offset`` c such that F_p shifts the degree by ``p - c``; this is what
keeps every coefficient a finite sum on a finite vector.  ``coeff`` applies
F_p to a single basis vector; results are cached on the module.

Normally ordered products split the left factor by the sign of the z-power:
the terms with p >= 0 form the creation part.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple

from ..scalars import accumulate
from .heisenberg import D, K
from .module import FockModule, MKey, Vec, apply_linear, degree


class FieldError(ValueError):
    """Unknown or inconsistent field handle."""


class Field:
    def offset(self, eps: int) -> int:
        raise NotImplementedError

    def _coeff(self, p: int, key: MKey, mod: FockModule) -> Vec:
        raise NotImplementedError

    def coeff(self, p: int, key: MKey, mod: FockModule) -> Vec:
        if degree(key) + p - self.offset(mod.eps) < 0:
            return {}
        ck = (self, p, key)
        hit = mod.field_cache.get(ck)
        if hit is None:
            hit = self._coeff(p, key, mod)
            mod.field_cache[ck] = hit
        return hit

    def apply(self, p: int, v: Vec, mod: FockModule) -> Vec:
        return apply_linear(lambda k: self.coeff(p, k, mod), v)


@dataclass(frozen=True)
class GField(Field):
    """u_a^eps(z) = sum_n u_a(n) z^(eps-n-1) on the Verma factor."""
    a: int

    def offset(self, eps):
        return eps - 1

    def _coeff(self, p, key, mod):
        return mod.verma_on(self.a + 1, mod.eps - 1 - p, key)


@dataclass(frozen=True)
class HField(Field):
    """k^eps(z) or d^eps(z); with ``shifted`` false, the plain k(z), d(z)."""
    species: int
    shifted: bool = True

    def offset(self, eps):
        return eps - 1 if self.shifted else -1

    def _coeff(self, p, key, mod):
        return mod.heis_on(self.species, self.offset(mod.eps) - p, key)


@dataclass(frozen=True)
class LField(Field):
    """L^eps_f(z) = sum_n L_f(n) z^(2eps-n-2) + (eps^2-2eps) mu ell z^(2eps-2)."""

    def offset(self, eps):
        return 2 * eps - 2

    def _coeff(self, p, key, mod):
        eps = mod.eps
        out = mod.lf_on(2 * eps - 2 - p, key)
        if p == 2 * eps - 2:
            anomaly = (eps * eps - 2 * eps) * mod.ctx.mu * mod.ctx.ell
            if anomaly:
                out = dict(out)
                accumulate(out, key, anomaly)
        return out


@dataclass(frozen=True)
class EField(Field):
    """E^{nk}(z) = sum_j E^{nk}(j) z^(-j)."""
    n: int

    def offset(self, eps):
        return 0

    def _coeff(self, p, key, mod):
        return mod.e_on(self.n, -p, key)


@dataclass(frozen=True)
class Scaled(Field):
    """lam * z^shift * F(z)."""
    field: Field
    lam: Fraction = Fraction(1)
    shift: int = 0

    def offset(self, eps):
        return self.field.offset(eps) + self.shift

    def _coeff(self, p, key, mod):
        if not self.lam:
            return {}
        inner = self.field.coeff(p - self.shift, key, mod)
        return {k: c * self.lam for k, c in inner.items()}


@dataclass(frozen=True)
class Deriv(Field):
    """z^eps d/dz F(z)."""
    field: Field

    def offset(self, eps):
        return self.field.offset(eps) + eps - 1

    def _coeff(self, p, key, mod):
        q = p - mod.eps + 1
        if not q:
            return {}
        return {k: c * q for k, c in self.field.coeff(q, key, mod).items()}


@dataclass(frozen=True)
class Sum(Field):
    fields: Tuple[Field, ...]

    def offset(self, eps):
        offs = {f.offset(eps) for f in self.fields}
        if len(offs) != 1:
            raise FieldError("summands shift degree differently")
        return offs.pop()

    def _coeff(self, p, key, mod):
        out: Vec = {}
        for f in self.fields:
            for k, c in f.coeff(p, key, mod).items():
                accumulate(out, k, c)
        return out


@dataclass(frozen=True)
class NormalOrdered(Field):
    """A+(z) B(z) + B(z) A-(z), with A+ the part of A with z-powers >= 0."""
    left: Field
    right: Field

    def offset(self, eps):
        return self.left.offset(eps) + self.right.offset(eps)

    def _coeff(self, p, key, mod):
        eps = mod.eps
        ca, cb = self.left.offset(eps), self.right.offset(eps)
        deg = degree(key)
        out: Vec = {}
        # creation part of A after B: B_{p-q} key must have degree >= 0
        for q in range(0, deg + p - cb + 1):
            inner = self.right.coeff(p - q, key, mod)
            if inner:
                for k, c in apply_linear(lambda x: self.left.coeff(q, x, mod), inner).items():
                    accumulate(out, k, c)
        # annihilation part of A first: A_q key must have degree >= 0
        for q in range(ca - deg, 0):
            inner = self.left.coeff(q, key, mod)
            if inner:
                for k, c in apply_linear(lambda x: self.right.coeff(p - q, x, mod), inner).items():
                    accumulate(out, k, c)
        return out


def Product(a: Field, b: Field) -> Field:
    """Product of two mutually commuting fields (equal to their normally ordered product)."""
    return NormalOrdered(a, b)


K_EPS = HField(K)
D_EPS = HField(D)
K_PLAIN = HField(K, shifted=False)
D_PLAIN = HField(D, shifted=False)
L_EPS = LField()


def d_field(n: int, ctx) -> Field:
    """D^eps_n(z) of the realization."""
    eps, mu, ell = ctx.epsilon, ctx.mu, ctx.ell
    E = EField(n)
    return Sum((
        Scaled(NormalOrdered(L_EPS, E), Fraction(n)),
        Scaled(E, Fraction(n * eps * (eps - 1), 2), 2 * eps - 2),
        Scaled(Deriv(NormalOrdered(D_EPS, E)), Fraction(-1)),
        Scaled(Product(Deriv(K_EPS), E), n * n * (mu - 1 / ell)),
    ))


def field_coeff(f: Field, p: int, v, mod: FockModule):
    """Coefficient of z^p of ``f`` applied to a ModuleVector."""
    from .module import ModuleVector

    return ModuleVector._wrap(f.apply(p, dict(v.items()), mod))
