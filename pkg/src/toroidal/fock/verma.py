"""The generalized Verma module over the affine-Virasoro algebra of g.

Creation generators are pairs ``(m, s)`` with ``m < 0`` the mode and ``s``
the species: 0 for L, ``a + 1`` for u_a.  A PBW word is a tuple of such
pairs sorted ascending, so larger |m| comes first and L precedes u_1, u_2, ...
A basis vector of the module is ``(word, i)`` with ``i`` indexing U.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Tuple

from ..galgebra import GAlgebra
from ..scalars import Combination, accumulate

Gen = Tuple[int, int]
Word = Tuple[Gen, ...]
VKey = Tuple[Word, int]


class VermaVector(Combination):
    """Combination of basis vectors ``(word, i)``."""

    __slots__ = ()


def word_degree(word: Word) -> int:
    return -sum(m for m, _ in word)


class VermaModule:
    """V(ell, c, U, beta) with U given by the module matrices of ``g``."""

    def __init__(self, g: GAlgebra, ell: Fraction, c: Fraction, beta: Fraction):
        if g.module is None:
            raise ValueError("the base algebra carries no module U")
        self.g = g
        self.ell = ell
        self.c = c
        self.beta = beta
        self.udim = g.module.dim
        self._cache: Dict[tuple, Dict[VKey, Fraction]] = {}

    def commutator(self, s1: int, m1: int, s2: int, m2: int) -> Tuple[List[Tuple[int, int, Fraction]], Fraction]:
        """[x1(m1), x2(m2)] as generator terms (s, m, coeff) plus a central scalar."""
        m = m1 + m2
        if s1 == 0 and s2 == 0:
            scalar = Fraction(m1 ** 3 - m1, 12) * self.c if m == 0 else Fraction(0)
            return ([(0, m, Fraction(m1 - m2))] if m1 != m2 else []), scalar
        if s1 == 0:
            return ([(s2, m, Fraction(-m2))] if m2 else []), Fraction(0)
        if s2 == 0:
            return ([(s1, m, Fraction(m1))] if m1 else []), Fraction(0)
        a, b = s1 - 1, s2 - 1
        gens = [(k + 1, m, c) for k, c in self.g.bracket(a, b).items()]
        scalar = m1 * self.g.form(a, b) * self.ell if m == 0 else Fraction(0)
        return gens, scalar

    def _act_top(self, s: int, m: int, i: int) -> Dict[VKey, Fraction]:
        if m > 0:
            return {}
        if m < 0:
            return {(((m, s),), i): Fraction(1)}
        if s == 0:
            return {((), i): self.beta} if self.beta else {}
        return {((), j): c for j, c in self.g.module.act(s - 1, i).items()}

    def act(self, s: int, m: int, word: Word, i: int) -> Dict[VKey, Fraction]:
        """x_s(m) applied to the basis vector (word, i); the result is shared, do not mutate."""
        key = (s, m, word, i)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        if not word:
            out = self._act_top(s, m, i)
        elif m < 0 and (m, s) <= word[0]:
            out = {(((m, s),) + word, i): Fraction(1)}
        else:
            (m1, s1), rest = word[0], word[1:]
            out = {}
            # x g1 rest = g1 (x rest) + [x, g1] rest
            for (w2, i2), c in self.act(s, m, rest, i).items():
                for k, v in self.act(s1, m1, w2, i2).items():
                    accumulate(out, k, c * v)
            gens, scalar = self.commutator(s, m, s1, m1)
            for s2, m3, c in gens:
                for k, v in self.act(s2, m3, rest, i).items():
                    accumulate(out, k, c * v)
            if scalar:
                accumulate(out, (rest, i), scalar)
        self._cache[key] = out
        return out

    def apply(self, s: int, m: int, v: Dict[VKey, Fraction]) -> Dict[VKey, Fraction]:
        out: Dict[VKey, Fraction] = {}
        for (w, i), c in v.items():
            for k, x in self.act(s, m, w, i).items():
                accumulate(out, k, c * x)
        return out


def verma_act(module: VermaModule, gen: tuple, v: VermaVector) -> VermaVector:
    """Apply ``("L", m)``, ``("u", a, m)``, ``("k",)`` or ``("kvir",)`` to v."""
    tag = gen[0]
    if tag == "k":
        return v.scale(module.ell)
    if tag == "kvir":
        return v.scale(module.c)
    if tag == "L":
        s, m = 0, gen[1]
    elif tag == "u":
        s, m = gen[1] + 1, gen[2]
    else:
        raise ValueError(f"unknown generator {gen!r}")
    return VermaVector._wrap(module.apply(s, m, dict(v.items())))
