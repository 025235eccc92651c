"""The tensor module V(ell, 24 mu ell - 2, U, beta) (x) V_h(ell, e^{alpha k} C[L]).

A basis vector is ``(vword, i, hword, r)``: a Verma PBW word on the i-th
basis vector of U, tensored with a Heisenberg monomial on e^{(alpha + r) k}.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, List, Tuple

from ..scalars import Combination, ParamContext, accumulate
from .heisenberg import HWord, Heisenberg, hword_degree
from .verma import VermaModule, Word, word_degree

MKey = Tuple[Word, int, HWord, int]
Vec = Dict[MKey, Fraction]


class ModuleVector(Combination):
    """Combination of tensor basis vectors ``(vword, i, hword, r)``."""

    __slots__ = ()

    def to_text(self, fmt=None) -> str:
        return super().to_text(key_text)


def key_text(key: MKey) -> str:
    vword, i, hword, r = key
    v = "".join(("L" if s == 0 else f"u{s - 1}") + f"({m})" for m, s in vword)
    h = "".join(("k" if s == 0 else "d") + f"({m})" for m, s in hword)
    return f"[{v}|{i}>(x)[{h}|e{r}>"


def degree(key: MKey) -> int:
    return word_degree(key[0]) + hword_degree(key[2])


class FockModule:
    """Exact operators on the tensor module for one parameter context."""

    def __init__(self, ctx: ParamContext):
        self.ctx = ctx
        self.eps = ctx.epsilon
        self.verma = VermaModule(ctx.base_algebra, ctx.ell, ctx.central_charge, ctx.beta)
        self.heis = Heisenberg(ctx.ell, ctx.alpha)
        # caches keyed by (field, p, basis key) and (algebra key, basis key)
        self.field_cache: Dict[tuple, Vec] = {}
        self.rho_cache: Dict[tuple, Vec] = {}

    # -- factor-wise operators on basis vectors --------------------------------
    def verma_on(self, s: int, m: int, key: MKey) -> Vec:
        vword, i, hword, r = key
        return {(w, j, hword, r): c for (w, j), c in self.verma.act(s, m, vword, i).items()}

    def heis_on(self, s: int, m: int, key: MKey) -> Vec:
        vword, i, hword, r = key
        return {(vword, i, w, r2): c for (w, r2), c in self.heis.act(s, m, hword, r).items()}

    def e_on(self, n: int, j: int, key: MKey) -> Vec:
        vword, i, hword, r = key
        return {(vword, i, w, r2): c for (w, r2), c in self.heis.e_coeff(n, j, hword, r).items()}

    def lh_on(self, n: int, key: MKey) -> Vec:
        vword, i, hword, r = key
        return {(vword, i, w, r2): c for (w, r2), c in self.heis.l_coeff(n, hword, r).items()}

    def lf_on(self, n: int, key: MKey) -> Vec:
        """L_f(n) = L_g(n) (x) 1 + 1 (x) L_h(n)."""
        out = dict(self.verma_on(0, n, key))
        for k, c in self.lh_on(n, key).items():
            accumulate(out, k, c)
        return out


def apply_linear(op, v: Vec) -> Vec:
    """Extend ``op(basis_key) -> Vec`` linearly to ``v``."""
    if len(v) == 1:
        ((key, c),) = v.items()
        res = op(key)
        return dict(res) if c == 1 else {k: c * x for k, x in res.items()}
    out: Vec = {}
    for key, c in v.items():
        for k, x in op(key).items():
            accumulate(out, k, c * x)
    return out


# -- enumeration of basis vectors ----------------------------------------------

def _words(degree: int, species: int) -> List[tuple]:
    """All PBW words of the given degree over ``species`` species of creation modes."""
    gens = [(-m, s) for m in range(1, degree + 1) for s in range(species)]
    out = []

    def rec(start: int, remaining: int, acc: list):
        if remaining == 0:
            out.append(tuple(acc))
            return
        for idx in range(start, len(gens)):
            m, s = gens[idx]
            if -m <= remaining:
                acc.append((m, s))
                rec(idx, remaining + m, acc)
                acc.pop()

    gens.sort()
    rec(0, degree, [])
    return out


def basis_vectors(ctx: ParamContext, max_degree: int, charges: Iterable[int]) -> List[MKey]:
    """Every tensor basis vector of total degree <= max_degree with the given charges."""
    g = ctx.base_algebra
    vw = {d: _words(d, g.dim + 1) for d in range(max_degree + 1)}
    hw = {d: _words(d, 2) for d in range(max_degree + 1)}
    out = []
    for r in charges:
        for dv in range(max_degree + 1):
            for dh in range(max_degree + 1 - dv):
                for a in vw[dv]:
                    for i in range(g.module.dim):
                        for b in hw[dh]:
                            out.append((a, i, b, r))
    return sorted(out)


def fock_vectors(max_degree: int, charges: Iterable[int]) -> List[Tuple[HWord, int]]:
    """Heisenberg basis vectors of degree <= max_degree."""
    return [(w, r) for r in charges for d in range(max_degree + 1) for w in _words(d, 2)]
