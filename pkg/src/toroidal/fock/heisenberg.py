"""Heisenberg Fock space over h = Ck + Cd with lattice charge, and the operators E^{nk}(z).

A basis vector is ``(word, r)``: ``word`` is a sorted tuple of creation
modes ``(m, s)`` with ``m < 0`` and ``s`` 0 for k, 1 for d, standing for
the monomial applied to the vacuum ``e^{(alpha + r) k}``.  Since
<k,k> = <d,d> = 0 and <k,d> = 1, the positive mode k(m) acts as
``m * ell * d/d(d(-m))`` and d(m) as ``m * ell * d/d(k(-m))``.
"""

from __future__ import annotations

from bisect import insort
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Dict, List, Tuple

from ..scalars import Combination, accumulate

K, D = 0, 1
HWord = Tuple[Tuple[int, int], ...]
HKey = Tuple[HWord, int]


class FockVector(Combination):
    """Combination of basis vectors ``(word, r)``."""

    __slots__ = ()


def hword_degree(word: HWord) -> int:
    return -sum(m for m, _ in word)


def _insert(word: HWord, gen: Tuple[int, int]) -> HWord:
    w = list(word)
    insort(w, gen)
    return tuple(w)


@lru_cache(maxsize=None)
def _partitions(n: int, largest: int) -> Tuple[Tuple[int, ...], ...]:
    if n == 0:
        return ((),)
    out = []
    for p in range(min(n, largest), 0, -1):
        for rest in _partitions(n - p, p):
            out.append((p,) + rest)
    return tuple(out)


class Heisenberg:
    """Modes of k and d on V(ell, 0) (x) e^{alpha k} C[L]."""

    def __init__(self, ell: Fraction, alpha: Fraction):
        self.ell = ell
        self.alpha = alpha
        self._ecache: Dict[tuple, Dict[HKey, Fraction]] = {}
        self._pcache: Dict[tuple, List[Tuple[HWord, Fraction]]] = {}

    def act(self, s: int, m: int, word: HWord, r: int) -> Dict[HKey, Fraction]:
        if m < 0:
            return {(_insert(word, (m, s)), r): Fraction(1)}
        if m == 0:
            if s == K:
                return {}
            c = self.alpha + r
            return {(word, r): c} if c else {}
        target = (-m, 1 - s)
        e = word.count(target)
        if not e:
            return {}
        w = list(word)
        w.remove(target)
        return {(tuple(w), r): e * m * self.ell}

    def apply(self, s: int, m: int, v: Dict[HKey, Fraction]) -> Dict[HKey, Fraction]:
        out: Dict[HKey, Fraction] = {}
        for (w, r), c in v.items():
            for k, x in self.act(s, m, w, r).items():
                accumulate(out, k, c * x)
        return out

    def _creation_part(self, n: int, a: int) -> List[Tuple[HWord, Fraction]]:
        """z^a coefficient of exp((n/ell) sum_m k(-m) z^m / m) as monomials in k(-m)."""
        key = (n, a)
        hit = self._pcache.get(key)
        if hit is not None:
            return hit
        out = []
        x = Fraction(n) / self.ell
        for parts in _partitions(a, a):
            mult: Dict[int, int] = {}
            for p in parts:
                mult[p] = mult.get(p, 0) + 1
            c = Fraction(1)
            word = []
            for m, rm in mult.items():
                c *= (x / m) ** rm / factorial(rm)
                word += [(-m, K)] * rm
            out.append((tuple(sorted(word)), c))
        self._pcache[key] = out
        return out

    def e_coeff(self, n: int, j: int, word: HWord, r: int) -> Dict[HKey, Fraction]:
        """E^{nk}(j), the coefficient of z^{-j}, on the basis vector (word, r)."""
        key = (n, j, word, r)
        hit = self._ecache.get(key)
        if hit is not None:
            return hit
        out: Dict[HKey, Fraction] = {}
        if n == 0:
            if j == 0:
                out[(word, r)] = Fraction(1)
            self._ecache[key] = out
            return out
        # annihilation factor: exp(-(n/ell) k(m) z^{-m}/m) on d(-m)^e gives
        # sum_t C(e, t) (-n)^t z^{-mt} d(-m)^{e-t}
        levels: Dict[int, int] = {}
        others = []
        for g in word:
            if g[1] == D:
                levels[-g[0]] = levels.get(-g[0], 0) + 1
            else:
                others.append(g)
        reduced = [(tuple(others), 0, Fraction(1))]
        for m, e in sorted(levels.items()):
            nxt = []
            for w, b, c in reduced:
                for t in range(e + 1):
                    cc = c * comb(e, t) * Fraction(-n) ** t
                    nxt.append((w + ((-m, D),) * (e - t), b + m * t, cc))
            reduced = nxt
        for w, b, c in reduced:
            a = b - j
            if a < 0:
                continue
            base = tuple(sorted(w))
            for mono, pc in self._creation_part(n, a):
                nw = tuple(sorted(base + mono)) if mono else base
                accumulate(out, (nw, r + n), c * pc)
        self._ecache[key] = out
        return out

    def apply_e(self, n: int, j: int, v: Dict[HKey, Fraction]) -> Dict[HKey, Fraction]:
        out: Dict[HKey, Fraction] = {}
        for (w, r), c in v.items():
            for k, x in self.e_coeff(n, j, w, r).items():
                accumulate(out, k, c * x)
        return out

    def l_coeff(self, i: int, word: HWord, r: int) -> Dict[HKey, Fraction]:
        """L_h(i) = (1/ell)(sum_{a<0} k(a) d(i-a) + sum_{a>=0} d(i-a) k(a))."""
        deg = hword_degree(word)
        out: Dict[HKey, Fraction] = {}
        inv = 1 / self.ell
        v = {(word, r): Fraction(1)}
        for a in range(i - deg, 0):
            for k, x in self.apply(K, a, self.apply(D, i - a, v)).items():
                accumulate(out, k, x * inv)
        for a in range(1, deg + 1):
            for k, x in self.apply(D, i - a, self.apply(K, a, v)).items():
                accumulate(out, k, x * inv)
        return out


def heisenberg_act(heis: Heisenberg, gen: str, mode: int, v: FockVector) -> FockVector:
    """Apply k(mode) or d(mode) to a Fock vector."""
    s = {"k": K, "d": D}[gen]
    return FockVector._wrap(heis.apply(s, mode, dict(v.items())))
