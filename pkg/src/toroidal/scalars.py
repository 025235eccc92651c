"""Exact rational scalars, sparse linear combinations and the parameter context."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Hashable, Iterable, Iterator, Mapping, Tuple, Union

Q = Fraction

RationalLike = Union[int, str, Fraction]


class ScalarError(ArithmeticError):
    """Invalid scalar operation (division by zero, unparsable rational)."""


def to_q(x: RationalLike) -> Fraction:
    """Coerce ``x`` to an exact rational; floats are refused."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise ScalarError(f"not a rational: {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ScalarError(f"cannot parse rational {x!r}") from exc
    raise ScalarError(f"not an exact rational: {x!r}")


def rational_arith(a: RationalLike, b: RationalLike, op: str) -> Fraction:
    a, b = to_q(a), to_q(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if b == 0:
            raise ScalarError("division by zero")
        return a / b
    raise ScalarError(f"unknown operation {op!r}")


def q_str(x: Fraction) -> str:
    return str(x)


def accumulate(target: dict, key: Hashable, value: Fraction) -> None:
    """Add ``value`` at ``key`` in a plain dict, dropping the entry if it cancels."""
    if not value:
        return
    v = target.get(key)
    if v is None:
        target[key] = value
    else:
        v = v + value
        if v:
            target[key] = v
        else:
            del target[key]


def accumulate_all(target: dict, source: Mapping, scale: Fraction = Fraction(1)) -> None:
    if not scale:
        return
    if scale == 1:
        for k, v in source.items():
            accumulate(target, k, v)
    else:
        for k, v in source.items():
            accumulate(target, k, v * scale)


class Combination(Mapping):
    """Finite rational linear combination of hashable, totally ordered basis keys.

    Zero coefficients are never stored, so two combinations are equal exactly
    when they represent the same vector.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Union[Mapping, Iterable[Tuple[Any, RationalLike]], None] = None):
        clean: dict = {}
        if terms is not None:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for k, v in items:
                accumulate(clean, k, to_q(v))
        self._terms = clean
        self._hash = None

    @classmethod
    def _wrap(cls, clean: dict) -> "Combination":
        # caller guarantees: no zero values, values are Fractions
        obj = cls.__new__(cls)
        obj._terms = clean
        obj._hash = None
        return obj

    @classmethod
    def basis(cls, key: Hashable, coeff: RationalLike = 1) -> "Combination":
        return cls({key: coeff})

    def __getitem__(self, key):
        return self._terms[key]

    def coeff(self, key) -> Fraction:
        return self._terms.get(key, Fraction(0))

    def __iter__(self) -> Iterator:
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other) -> bool:
        if isinstance(other, Combination):
            return self._terms == other._terms
        if isinstance(other, int) and other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __add__(self, other: "Combination") -> "Combination":
        if not isinstance(other, Combination):
            return NotImplemented
        out = dict(self._terms)
        accumulate_all(out, other._terms)
        return type(self)._wrap(out)

    def __sub__(self, other: "Combination") -> "Combination":
        if not isinstance(other, Combination):
            return NotImplemented
        out = dict(self._terms)
        accumulate_all(out, other._terms, Fraction(-1))
        return type(self)._wrap(out)

    def __neg__(self) -> "Combination":
        return type(self)._wrap({k: -v for k, v in self._terms.items()})

    def scale(self, c: RationalLike) -> "Combination":
        c = to_q(c)
        if not c:
            return type(self)._wrap({})
        return type(self)._wrap({k: v * c for k, v in self._terms.items()})

    def __mul__(self, c):
        if isinstance(c, (int, Fraction)) and not isinstance(c, bool):
            return self.scale(c)
        return NotImplemented

    __rmul__ = __mul__

    def sorted_items(self):
        return sorted(self._terms.items(), key=lambda kv: kv[0])

    def to_text(self, fmt=str) -> str:
        if not self._terms:
            return "0"
        return " + ".join(f"({v})*{fmt(k)}" for k, v in self.sorted_items())

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.to_text(repr)})"


def combination_normalize(c: Union[Mapping, Combination]) -> Combination:
    return c if isinstance(c, Combination) else Combination(c)


@dataclass(frozen=True)
class ParamContext:
    """Parameters shared by every computation.

    ``epsilon`` is the integer deformation index, ``mu`` the cocycle
    parameter, ``ell`` the (nonzero) level, ``alpha`` the lattice shift and
    ``beta`` the L(0)-weight on the top space.
    """

    epsilon: int
    mu: Fraction = Fraction(0)
    ell: Fraction = Fraction(1)
    alpha: Fraction = Fraction(0)
    beta: Fraction = Fraction(0)
    base_algebra: Any = None

    def __post_init__(self):
        if isinstance(self.epsilon, bool) or not isinstance(self.epsilon, int):
            raise ValueError(f"epsilon must be an integer, got {self.epsilon!r}")
        for name in ("mu", "ell", "alpha", "beta"):
            object.__setattr__(self, name, to_q(getattr(self, name)))
        if self.ell == 0:
            raise ValueError("ell must be nonzero")
        if self.base_algebra is None:
            from .galgebra import abelian

            object.__setattr__(self, "base_algebra", abelian())

    @property
    def central_charge(self) -> Fraction:
        """Virasoro central charge 24*mu*ell - 2 of the affine-Virasoro factor."""
        return 24 * self.mu * self.ell - 2

    def replace(self, **changes) -> "ParamContext":
        from dataclasses import replace

        return replace(self, **changes)
