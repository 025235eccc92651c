"""Generating functions a^eps(z) on the toroidal algebra and the checker for their relations.

A series is named by a label tuple:

    ("U", m, a)   (t1^m (x) u_a)^eps(z) = sum_n t0^n t1^m (x) u_a  z^(eps-n-1)
    ("k1",)       sum_n t0^n k1 z^(eps-n-1)
    ("d1",)       sum_n t0^n d1 z^(eps-n-1)
    ("K", m)      sum_n k_{n,m} z^(-n)             (zero series when m = 0)
    ("D", m)      sum_n d^eps_{n,m} z^(2eps-n-2)   (zero series when m = 0)
    ("k0",)       the constant k0

The right-hand sides are lists of terms ``(c, S, r, s, var)`` standing for
``c * (D^r S(var)) * (D^s delta)`` where ``D = w^eps d/dw`` and
``delta = z^(eps-1) delta(w/z) = sum_b z^(eps-1-b) w^b``.  Coefficients are
extracted by index bookkeeping, one contributing term at a time.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Dict, Iterator, List, Optional, Tuple

from .algebra import (AlgebraElement, D0Shift, K0, bracket, d_eps, t0_power)
from .identities import eps_pochhammer
from .scalars import ParamContext, accumulate_all

Label = Tuple
Term = Tuple[Fraction, Label, int, int, str]

ZERO = AlgebraElement()


class Prop23Error(ValueError):
    """Unknown relation or malformed series labels."""


def _is_zero_series(label: Label) -> bool:
    return label[0] in ("K", "D") and label[1] == 0


def series_exponent(label: Label, n: int, eps: int) -> int:
    """z-exponent carrying the n-th coefficient of the series."""
    tag = label[0]
    if tag in ("U", "k1", "d1"):
        return eps - n - 1
    if tag == "D":
        return 2 * eps - n - 2
    if tag == "K":
        return -n
    if tag == "k0":
        return 0
    raise Prop23Error(f"unknown series label {label!r}")


def series_index(label: Label, e: int, eps: int) -> int:
    """Inverse of ``series_exponent``: the mode n sitting at z^e."""
    tag = label[0]
    if tag in ("U", "k1", "d1"):
        return eps - 1 - e
    if tag == "D":
        return 2 * eps - 2 - e
    if tag == "K":
        return -e
    raise Prop23Error(f"unknown series label {label!r}")


def series_coeff(label: Label, n: int, ctx: ParamContext) -> AlgebraElement:
    """The coefficient of the series at mode n, in the canonical basis."""
    return _series_coeff(label, n, ctx)


@lru_cache(maxsize=None)
def _series_coeff(label: Label, n: int, ctx: ParamContext) -> AlgebraElement:
    tag = label[0]
    if _is_zero_series(label):
        return ZERO
    if tag == "U":
        return t0_power(n, "u", ctx, a=label[2], m1=label[1])
    if tag == "k1":
        return t0_power(n, "k1", ctx)
    if tag == "d1":
        return t0_power(n, "d1", ctx)
    if tag == "K":
        return AlgebraElement({("KF", n, label[1]): 1})
    if tag == "D":
        return d_eps(n, label[1], ctx)
    if tag == "k0":
        return AlgebraElement({K0: 1}) if n == 0 else ZERO
    raise Prop23Error(f"unknown series label {label!r}")


def term_coefficient(term: Term, P: int, Q: int, ctx: ParamContext) -> AlgebraElement:
    """Coefficient of z^P w^Q in one right-hand-side term."""
    c, label, r, s, var = term
    eps = ctx.epsilon
    step = eps - 1
    if _is_zero_series(label):
        return ZERO
    if var == "w":
        b = eps - 1 - P
        e = Q - b - (s + r) * step
    elif var == "z":
        if r:
            raise Prop23Error("derivatives of a z-series are not supported")
        b = Q - s * step
        e = P - (eps - 1 - b)
    else:
        raise Prop23Error(f"unknown variable {var!r}")
    factor = c * eps_pochhammer(b, s, eps) * eps_pochhammer(e, r, eps)
    if not factor:
        return ZERO
    if label[0] == "k0":
        return AlgebraElement({K0: factor}) if e == 0 else ZERO
    return series_coeff(label, series_index(label, e, eps), ctx).scale(factor)


# -- the twelve relations ------------------------------------------------------

VARIANTS = {2: ("k1", "K"), 5: ("k1k1", "KK", "k1K"), 9: ("dk", "dd")}


def _need(labels: dict, *names) -> list:
    try:
        return [int(labels[n]) for n in names]
    except KeyError as exc:
        raise Prop23Error(f"missing series label {exc.args[0]!r}") from exc
    except (TypeError, ValueError) as exc:
        raise Prop23Error(f"malformed series labels {labels!r}") from exc


def _nonzero(**vals) -> None:
    for name, v in vals.items():
        if v == 0:
            raise Prop23Error(f"label {name} must be nonzero")


def relation_terms(relation_id: int, labels: dict, ctx: ParamContext,
                   printed_form: bool = False) -> Tuple[Label, Label, List[Term]]:
    """Left series A, B and the right-hand terms of [A(z), B(w)].

    ``printed_form`` swaps in the literal right-hand side of relation 9 as
    typeset, which lacks the derivative on the delta function; it is used
    only to demonstrate that the literal form fails.
    """
    g = ctx.base_algebra
    mu = ctx.mu
    one = Fraction(1)
    if relation_id == 1:
        m, n, u, v = _need(labels, "m", "n", "u", "v")
        A, B = ("U", m, u), ("U", n, v)
        terms = [(c, ("U", m + n, w), 0, 0, "w") for w, c in g.bracket(u, v).items()]
        f = g.form(u, v)
        if f:
            terms += [(f * m, ("K", m + n), 1, 0, "w"), (f * (m + n), ("K", m + n), 0, 1, "w")]
            if m + n == 0:
                terms += [(f * m, ("k1",), 0, 0, "w"), (f, ("k0",), 0, 1, "w")]
        return A, B, terms
    if relation_id == 2:
        variant = labels.get("variant", "K")
        n, u = _need(labels, "n", "u")
        if variant == "k1":
            return ("k1",), ("U", n, u), []
        if variant == "K":
            (k,) = _need(labels, "k")
            _nonzero(k=k)
            return ("K", k), ("U", n, u), []
        raise Prop23Error(f"unknown variant {variant!r} for relation 2")
    if relation_id == 3:
        k, n, u = _need(labels, "k", "n", "u")
        _nonzero(k=k)
        S = ("U", k + n, u)
        return ("D", k), ("U", n, u), [(Fraction(k), S, 1, 0, "w"), (Fraction(k + n), S, 0, 1, "w")]
    if relation_id == 4:
        n, u = _need(labels, "n", "u")
        return ("d1",), ("U", n, u), [(Fraction(n), ("U", n, u), 0, 0, "w")]
    if relation_id == 5:
        variant = labels.get("variant", "KK")
        if variant == "k1k1":
            return ("k1",), ("k1",), []
        (l,) = _need(labels, "l")
        _nonzero(l=l)
        if variant == "KK":
            (k,) = _need(labels, "k")
            _nonzero(k=k)
            return ("K", k), ("K", l), []
        if variant == "k1K":
            return ("k1",), ("K", l), []
        raise Prop23Error(f"unknown variant {variant!r} for relation 5")
    if relation_id == 6:
        k, l = _need(labels, "k", "l")
        _nonzero(k=k, l=l)
        S = ("K", k + l)
        terms = [(Fraction(k), S, 1, 0, "w"), (Fraction(k + l), S, 0, 1, "w")]
        if k + l == 0:
            terms += [(Fraction(k), ("k1",), 0, 0, "z"), (one, ("k0",), 0, 1, "w")]
        return ("D", k), ("K", l), terms
    if relation_id == 7:
        (k,) = _need(labels, "k")
        _nonzero(k=k)
        S = ("K", k)
        # D applied to (DK) delta + K (D delta), expanded by Leibniz
        terms = [(Fraction(k), S, 2, 0, "w"), (Fraction(2 * k), S, 1, 1, "w"),
                 (Fraction(k), S, 0, 2, "w")]
        return ("D", k), ("k1",), terms
    if relation_id == 8:
        (n,) = _need(labels, "n")
        _nonzero(n=n)
        return ("d1",), ("K", n), [(Fraction(n), ("K", n), 0, 0, "w")]
    if relation_id == 9:
        variant = labels.get("variant", "dk")
        if variant == "dk":
            return ("d1",), ("k1",), [(one, ("k0",), 0, 0 if printed_form else 1, "w")]
        if variant == "dd":
            return ("d1",), ("d1",), []
        raise Prop23Error(f"unknown variant {variant!r} for relation 9")
    if relation_id == 10:
        k, l = _need(labels, "k", "l")
        _nonzero(k=k, l=l)
        S = ("D", k + l)
        terms = [(Fraction(k), S, 1, 0, "w"), (Fraction(k + l), S, 0, 1, "w")]
        if k + l == 0:
            terms += [(Fraction(-k), ("d1",), 2, 0, "w"), (mu * k ** 3, ("k1",), 2, 0, "w")]
        for r in range(4):
            c = mu * comb(3, r) * Fraction(k) ** r * Fraction(k + l) ** (3 - r)
            if c:
                terms.append((c, ("K", k + l), r, 3 - r, "w"))
        return ("D", k), ("D", l), terms
    if relation_id == 11:
        (l,) = _need(labels, "l")
        _nonzero(l=l)
        return ("d1",), ("D", l), [(Fraction(l), ("D", l), 0, 0, "w"),
                                   (mu * l ** 3, ("K", l), 0, 2, "w")]
    if relation_id == 12:
        a = labels.get("a")
        if not isinstance(a, tuple) or not a:
            raise Prop23Error("relation 12 needs a series label 'a'")
        return ("D0",), a, []
    raise Prop23Error(f"unknown relation id {relation_id!r}")


def prop23_residual(relation_id: int, series_labels: dict, coeff_indices: Tuple[int, int],
                    ctx: ParamContext, printed_form: bool = False,
                    bracket_ctx: Optional[ParamContext] = None) -> AlgebraElement:
    """LHS minus RHS of one relation at the (i, j) coefficient.

    i and j are the modes of the two series, so the compared coefficient is
    that of z^{e_A(i)} w^{e_B(j)}.  For relation 12 only j is used.
    ``bracket_ctx`` evaluates the left-hand bracket with other parameters
    (fault injection); by default it is ``ctx``.
    """
    A, B, terms = relation_terms(relation_id, series_labels, ctx, printed_form)
    i, j = coeff_indices
    eps = ctx.epsilon
    bctx = bracket_ctx or ctx
    if relation_id == 12:
        lhs = bracket(AlgebraElement({D0Shift: 1}), series_coeff(B, j, ctx), bctx)
        if B[0] == "k0":
            return lhs
        # -z^eps d/dz a(z): coefficient at z^Q is -e * X at z^e, e = Q - eps + 1
        e = series_exponent(B, j, eps) - eps + 1
        if _is_zero_series(B):
            return lhs
        return lhs + series_coeff(B, series_index(B, e, eps), ctx).scale(e)
    lhs = bracket(series_coeff(A, i, ctx), series_coeff(B, j, ctx), bctx)
    P, Q = series_exponent(A, i, eps), series_exponent(B, j, eps)
    out: Dict = dict(lhs.items())
    for term in terms:
        accumulate_all(out, term_coefficient(term, P, Q, ctx), Fraction(-1))
    return AlgebraElement._wrap(out)


def relation_label_samples(relation_id: int, box: int, dim: int) -> Iterator[dict]:
    """Every admissible label assignment with |m|, |n|, |k|, |l| <= box."""
    rng = range(-box, box + 1)
    nz = [x for x in rng if x]
    gi = range(dim)
    if relation_id == 1:
        for m in rng:
            for n in rng:
                for u in gi:
                    for v in gi:
                        yield {"m": m, "n": n, "u": u, "v": v}
    elif relation_id == 2:
        for n in rng:
            for u in gi:
                yield {"variant": "k1", "n": n, "u": u}
                for k in nz:
                    yield {"variant": "K", "k": k, "n": n, "u": u}
    elif relation_id == 3:
        for k in nz:
            for n in rng:
                for u in gi:
                    yield {"k": k, "n": n, "u": u}
    elif relation_id == 4:
        for n in rng:
            for u in gi:
                yield {"n": n, "u": u}
    elif relation_id == 5:
        yield {"variant": "k1k1"}
        for l in nz:
            yield {"variant": "k1K", "l": l}
            for k in nz:
                yield {"variant": "KK", "k": k, "l": l}
    elif relation_id in (6, 10):
        for k in nz:
            for l in nz:
                yield {"k": k, "l": l}
    elif relation_id == 7:
        for k in nz:
            yield {"k": k}
    elif relation_id == 8:
        for n in nz:
            yield {"n": n}
    elif relation_id == 9:
        yield {"variant": "dk"}
        yield {"variant": "dd"}
    elif relation_id == 11:
        for l in nz:
            yield {"l": l}
    elif relation_id == 12:
        for lab in all_series_labels(box, dim):
            yield {"a": lab}
    else:
        raise Prop23Error(f"unknown relation id {relation_id!r}")


def all_series_labels(box: int, dim: int) -> List[Label]:
    rng = range(-box, box + 1)
    out: List[Label] = [("k1",), ("d1",)]
    out += [("U", m, a) for m in rng for a in range(dim)]
    out += [("K", m) for m in rng] + [("D", m) for m in rng]
    return out
