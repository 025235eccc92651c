"""Truncated formal series with exact rational coefficients.

A series has ``k`` small variables (z0, or z1 and z2' for compositions),
truncated at a total degree ``order``, and one auxiliary Laurent variable
``z2`` whose exponents are unrestricted integers.  Terms are stored as
``{(e_1, ..., e_k, e_aux): coefficient}``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Optional, Sequence, Tuple

from .scalars import RationalLike, accumulate, to_q

Exps = Tuple[int, ...]


class SeriesError(ValueError):
    """Incompatible series or an illegal substitution."""


def binom(e: RationalLike, k: int) -> Fraction:
    """Generalized binomial coefficient C(e, k) for any rational e."""
    e = to_q(e)
    out = Fraction(1)
    for i in range(k):
        out = out * (e - i) / (i + 1)
    return out


class TruncatedSeries:
    __slots__ = ("terms", "order", "small", "aux")

    def __init__(self, terms: Optional[Dict[Exps, RationalLike]] = None, order: int = 8,
                 small: Sequence[str] = ("z0",), aux: str = "z2"):
        if order < 0:
            raise SeriesError("truncation order must be nonnegative")
        self.order = order
        self.small = tuple(small)
        self.aux = aux
        clean: Dict[Exps, Fraction] = {}
        k = len(self.small)
        for exps, c in (terms or {}).items():
            exps = tuple(int(x) for x in exps)
            if len(exps) != k + 1:
                raise SeriesError(f"exponent tuple {exps} does not match {k} small variables")
            if any(x < 0 for x in exps[:k]):
                raise SeriesError("small-variable exponents must be nonnegative")
            if sum(exps[:k]) <= order:
                accumulate(clean, exps, to_q(c))
        self.terms = clean

    # -- construction helpers ---------------------------------------------
    def _like(self, terms: Dict[Exps, Fraction], order: Optional[int] = None) -> "TruncatedSeries":
        out = TruncatedSeries.__new__(TruncatedSeries)
        out.order = self.order if order is None else order
        out.small = self.small
        out.aux = self.aux
        out.terms = {e: c for e, c in terms.items() if c and sum(e[:-1]) <= out.order}
        return out

    @classmethod
    def monomial(cls, exps: Exps, coeff: RationalLike = 1, order: int = 8,
                 small: Sequence[str] = ("z0",), aux: str = "z2") -> "TruncatedSeries":
        return cls({tuple(exps): coeff}, order, small, aux)

    def zero(self) -> "TruncatedSeries":
        return self._like({})

    def _check(self, other: "TruncatedSeries") -> None:
        if self.small != other.small or self.aux != other.aux:
            raise SeriesError("series live in different variables")

    # -- arithmetic -----------------------------------------------------------
    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            accumulate(out, e, c)
        return self._like(out, min(self.order, other.order))

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return self + other.scale(-1)

    def __neg__(self) -> "TruncatedSeries":
        return self.scale(-1)

    def scale(self, c: RationalLike) -> "TruncatedSeries":
        c = to_q(c)
        return self._like({e: v * c for e, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        self._check(other)
        order = min(self.order, other.order)
        out: Dict[Exps, Fraction] = {}
        for e1, c1 in self.terms.items():
            d1 = sum(e1[:-1])
            for e2, c2 in other.terms.items():
                if d1 + sum(e2[:-1]) > order:
                    continue
                accumulate(out, tuple(a + b for a, b in zip(e1, e2)), c1 * c2)
        return self._like(out, order)

    __rmul__ = __mul__

    def shift_aux(self, k: int) -> "TruncatedSeries":
        """Multiply by z2^k."""
        return self._like({e[:-1] + (e[-1] + k,): c for e, c in self.terms.items()})

    def truncate(self, order: int) -> "TruncatedSeries":
        return self._like(self.terms, min(order, self.order))

    def valuation(self) -> Optional[int]:
        """Lowest total degree in the small variables, or None for zero."""
        if not self.terms:
            return None
        return min(sum(e[:-1]) for e in self.terms)

    def coefficient(self, exps: Exps) -> Fraction:
        return self.terms.get(tuple(exps), Fraction(0))

    def small_part(self, degree_exps: Exps) -> Dict[int, Fraction]:
        """Laurent polynomial in z2 multiplying the given small monomial."""
        k = len(degree_exps)
        return {e[-1]: c for e, c in self.terms.items() if e[:k] == tuple(degree_exps)}

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if isinstance(other, TruncatedSeries):
            return (self.small, self.aux, self.terms) == (other.small, other.aux, other.terms)
        if isinstance(other, int) and other == 0:
            return not self.terms
        return NotImplemented

    __hash__ = None

    def power(self, n: int) -> "TruncatedSeries":
        if n < 0:
            raise SeriesError("use inverse() for negative powers")
        out = self._like({(0,) * len(self.small) + (0,): Fraction(1)})
        for _ in range(n):
            out = out * self
        return out

    def binomial_power(self, e: RationalLike) -> "TruncatedSeries":
        """(1 + self)^e for a series of positive valuation."""
        v = self.valuation()
        if v is not None and v < 1:
            raise SeriesError("(1 + X)^e needs X of positive valuation")
        out = self._like({(0,) * len(self.small) + (0,): Fraction(1)})
        term = out
        for k in range(1, self.order + 1):
            term = term * self
            if term.is_zero():
                break
            out = out + term.scale(binom(e, k))
        return out

    def inverse(self) -> "TruncatedSeries":
        """Multiplicative inverse in one small variable, by the coefficient recurrence.

        The constant coefficient must be a single monomial c * z2^a.
        """
        if len(self.small) != 1:
            raise SeriesError("inverse is implemented for one small variable")
        h0 = self.small_part((0,))
        if len(h0) != 1:
            raise SeriesError("constant coefficient must be a nonzero monomial in z2")
        ((a, c),) = h0.items()
        parts = [self.small_part((n,)) for n in range(self.order + 1)]
        g = [{-a: 1 / c}]
        for n in range(1, self.order + 1):
            acc: Dict[int, Fraction] = {}
            for k in range(1, n + 1):
                for e1, c1 in parts[k].items():
                    for e2, c2 in g[n - k].items():
                        accumulate(acc, e1 + e2, c1 * c2)
            g.append({e - a: -v / c for e, v in acc.items() if v})
        return self._like({(n, e): v for n, gn in enumerate(g) for e, v in gn.items()})

    def substitute(self, small_subs: Sequence["TruncatedSeries"],
                   aux_sub: Optional["TruncatedSeries"] = None) -> "TruncatedSeries":
        """Replace each small variable by a series and z2 by z2 * (1 + aux_sub).

        Every substituted series must have positive valuation and live in the
        same target variables.
        """
        if len(small_subs) != len(self.small):
            raise SeriesError("need one substitution per small variable")
        target = small_subs[0] if small_subs else aux_sub
        if target is None:
            raise SeriesError("nothing to substitute")
        for s in list(small_subs) + ([aux_sub] if aux_sub is not None else []):
            target._check(s)
            v = s.valuation()
            if v is not None and v < 1:
                raise SeriesError("substituted series must have positive valuation")
        order = min([self.order] + [s.order for s in small_subs])
        one = target._like({(0,) * len(target.small) + (0,): Fraction(1)}, order)
        powers = [[one] for _ in small_subs]
        aux_cache: Dict[int, TruncatedSeries] = {}
        out = target._like({}, order)
        for exps, c in sorted(self.terms.items()):
            term = one
            for idx, a in enumerate(exps[:-1]):
                pw = powers[idx]
                while len(pw) <= a:
                    pw.append((pw[-1] * small_subs[idx]).truncate(order))
                term = term * pw[a]
            e = exps[-1]
            if aux_sub is not None:
                if e not in aux_cache:
                    aux_cache[e] = aux_sub.truncate(order).binomial_power(e)
                term = term * aux_cache[e]
            out = out + term.shift_aux(e).scale(c)
        return out

    # -- output ----------------------------------------------------------------
    def to_text(self) -> str:
        if not self.terms:
            return "0"
        names = self.small + (self.aux,)
        parts = []
        for exps, c in sorted(self.terms.items()):
            mono = "*".join(f"{n}^{x}" for n, x in zip(names, exps) if x)
            parts.append(f"{c}*{mono}" if mono else f"{c}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"TruncatedSeries[{self.order}]({self.to_text()})"


def series_from(coeffs: Iterable[Tuple[Exps, RationalLike]], order: int,
                small: Sequence[str] = ("z0",), aux: str = "z2") -> TruncatedSeries:
    return TruncatedSeries(dict(coeffs), order, small, aux)
