"""The extended 2-toroidal Lie algebra over a base algebra ``g``.

Canonical basis keys are plain tuples so they sort and hash cheaply:

    ("G", m0, m1, a)   t0^m0 t1^m1 (x) u_a
    ("K0",), ("K1",)   k_0, k_1
    ("KF", m0, m1)     k_{m0,m1}, (m0, m1) != (0, 0)
    ("DT", m0, m1)     tilde d^eps_{m0,m1}, (m0, m1) != (eps - 1, 0)
    ("D0",), ("D1",)   t0^(eps-1) d_0, t0^(eps-1) d_1

Brackets are computed by lifting both arguments to raw monomials of
R (x) g, the 1-forms and Der(R), applying the full toroidal relations with
the mu-cocycle, and reducing back to canonical keys.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Tuple

from .galgebra import GAlgebra
from .scalars import Combination, ParamContext, accumulate

Key = Tuple


class AlgebraError(ValueError):
    """Invalid basis key or an element outside the algebra."""


class ClosureError(AlgebraError):
    """A bracket produced a derivation outside the span of the canonical basis."""


class AlgebraElement(Combination):
    """Sparse rational combination of canonical basis keys."""

    __slots__ = ()

    def to_text(self, fmt=None) -> str:
        return super().to_text(key_str)


# -- key constructors ---------------------------------------------------------

def TorusG(m0: int, m1: int, a: int) -> Key:
    return ("G", int(m0), int(m1), int(a))


K0: Key = ("K0",)
K1: Key = ("K1",)
D0Shift: Key = ("D0",)
D1Shift: Key = ("D1",)


def KForm(m0: int, m1: int) -> Key:
    if m0 == 0 and m1 == 0:
        raise AlgebraError("k_{0,0} is not a basis element")
    return ("KF", int(m0), int(m1))


def DTilde(m0: int, m1: int, eps: int = None) -> Key:
    if eps is not None and m1 == 0 and m0 == eps - 1:
        raise AlgebraError(f"tilde d_{{{m0},0}} is excluded when eps = {eps}")
    return ("DT", int(m0), int(m1))


def check_key(key: Key, eps: int, dim: int = None) -> None:
    tag = key[0]
    if tag == "G":
        if dim is not None and not 0 <= key[3] < dim:
            raise AlgebraError(f"g-index out of range in {key}")
    elif tag == "KF":
        if key[1] == 0 and key[2] == 0:
            raise AlgebraError("k_{0,0} is not a basis element")
    elif tag == "DT":
        if key[2] == 0 and key[1] == eps - 1:
            raise AlgebraError(f"{key} is excluded when eps = {eps}")
    elif tag not in ("K0", "K1", "D0", "D1"):
        raise AlgebraError(f"unknown basis key {key!r}")


def validate(x: AlgebraElement, ctx: ParamContext) -> None:
    dim = ctx.base_algebra.dim
    for key in x:
        check_key(key, ctx.epsilon, dim)


def element(terms) -> AlgebraElement:
    if isinstance(terms, tuple):
        return AlgebraElement({terms: 1})
    return AlgebraElement(terms)


def key_str(key: Key) -> str:
    tag = key[0]
    if tag == "G":
        return f"t0^{key[1]}t1^{key[2]}(x)u{key[3]}"
    if tag == "KF":
        return f"k[{key[1]},{key[2]}]"
    if tag == "DT":
        return f"dt[{key[1]},{key[2]}]"
    if tag == "DE":
        return f"d[{key[1]},{key[2]}]"
    return {"K0": "k0", "K1": "k1", "D0": "t0^(e-1)d0", "D1": "t0^(e-1)d1"}[tag]


def grading_degree(key: Key, eps: int) -> int:
    """n such that [d_0, x] = -n x, i.e. x lies in the degree-n piece."""
    tag = key[0]
    if tag in ("G", "KF", "DT", "DE"):
        return -key[1]
    if tag in ("K0", "K1"):
        return 0
    return 1 - eps


def is_central(key: Key) -> bool:
    return key[0] in ("K0", "K1", "KF")


# -- normal form in K = Omega^1 / dR -------------------------------------------

def _kform_terms(m0: int, m1: int, r: int) -> Dict[Key, Fraction]:
    if m0 == 0 and m1 == 0:
        return {K0 if r == 0 else K1: Fraction(1)}
    if m1 != 0:
        # k_{m0,m1} = t^m k0 / m1 and m0 t^m k0 + m1 t^m k1 = 0
        c = Fraction(m1) if r == 0 else Fraction(-m0)
        return {("KF", m0, m1): c}
    if r == 0:
        return {}
    return {("KF", m0, 0): Fraction(-m0)}


def kform_normalize(m0: int, m1: int, r: int) -> AlgebraElement:
    """Class of t0^m0 t1^m1 k_r in K, in the basis {k0, k1, k_{m0,m1}}."""
    if r not in (0, 1):
        raise AlgebraError("r must be 0 or 1")
    return AlgebraElement._wrap(_kform_terms(m0, m1, r))


# -- raw lifts -----------------------------------------------------------------

def _raw(key: Key, eps: int):
    """Lift a canonical key to ('T', m0, m1, a) / ('K', forms) / ('D', derivations)."""
    tag = key[0]
    if tag == "G":
        return "T", key
    if tag == "K0":
        return "K", {(0, 0, 0): Fraction(1)}
    if tag == "K1":
        return "K", {(0, 0, 1): Fraction(1)}
    if tag == "KF":
        m0, m1 = key[1], key[2]
        if m1 != 0:
            return "K", {(m0, m1, 0): Fraction(1, m1)}
        return "K", {(m0, 0, 1): Fraction(-1, m0)}
    if tag == "DT":
        m0, m1 = key[1], key[2]
        out = {}
        if m0 - eps + 1:
            out[(m0, m1, 1)] = Fraction(m0 - eps + 1)
        if m1:
            out[(m0, m1, 0)] = Fraction(-m1)
        return "D", out
    if tag == "D0":
        return "D", {(eps - 1, 0, 0): Fraction(1)}
    if tag == "D1":
        return "D", {(eps - 1, 0, 1): Fraction(1)}
    raise AlgebraError(f"unknown basis key {key!r}")


def normalize_derivation(raw: Dict[Tuple[int, int, int], Fraction], eps: int) -> Dict[Key, Fraction]:
    """Rewrite sum c * t^m d_i in the basis of D^eps; raise if it is not in D^eps."""
    by_mono: Dict[Tuple[int, int], list] = {}
    for (m0, m1, i), c in raw.items():
        if c:
            slot = by_mono.setdefault((m0, m1), [Fraction(0), Fraction(0)])
            slot[i] += c
    out: Dict[Key, Fraction] = {}
    for (m0, m1), (a, b) in by_mono.items():
        if not a and not b:
            continue
        if m1 == 0 and m0 == eps - 1:
            accumulate(out, D0Shift, a)
            accumulate(out, D1Shift, b)
        elif m1 != 0:
            x = -a / m1
            if b != x * (m0 - eps + 1):
                raise ClosureError(
                    f"derivation {a}*t^({m0},{m1})d0 + {b}*t^({m0},{m1})d1 is not in D^{eps}")
            accumulate(out, ("DT", m0, m1), x)
        else:
            if a:
                raise ClosureError(f"derivation {a}*t0^{m0} d0 is not in D^{eps}")
            accumulate(out, ("DT", m0, 0), b / (m0 - eps + 1))
    return out


def _normalize_forms(raw: Dict[Tuple[int, int, int], Fraction], out: Dict[Key, Fraction]) -> None:
    for (m0, m1, r), c in raw.items():
        if c:
            for key, v in _kform_terms(m0, m1, r).items():
                accumulate(out, key, c * v)


# -- brackets ------------------------------------------------------------------

def bracket_table(ctx: ParamContext) -> Dict[Tuple[Key, Key], Tuple[Tuple[Key, Fraction], ...]]:
    """Memo of basis brackets for one (eps, mu, g); keyed by the pair of keys only."""
    tk = (ctx.epsilon, ctx.mu, ctx.base_algebra)
    table = _TABLES.get(tk)
    if table is None:
        table = _TABLES[tk] = {}
    return table


_TABLES: Dict[tuple, dict] = {}


def table_bracket(table: dict, a: Key, b: Key, ctx: ParamContext) -> Tuple[Tuple[Key, Fraction], ...]:
    hit = table.get((a, b))
    if hit is None:
        raw = _bracket_keys(a, b, ctx.epsilon, ctx.mu, ctx.base_algebra)
        # integral coefficients are stored as int, which multiplies much faster
        hit = table[(a, b)] = tuple((k, v.numerator if v.denominator == 1 else v) for k, v in raw)
    return hit


def _bracket_keys(a: Key, b: Key, eps: int, mu: Fraction, g: GAlgebra) -> Tuple[Tuple[Key, Fraction], ...]:
    ta, ra = _raw(a, eps)
    tb, rb = _raw(b, eps)
    sign = Fraction(1)
    if tb == "D" and ta != "D":
        ta, ra, tb, rb = tb, rb, ta, ra
        sign = Fraction(-1)
    if ta == "K" or (tb == "K" and ta != "D"):
        return ()
    forms: Dict[Tuple[int, int, int], Fraction] = {}
    ders: Dict[Tuple[int, int, int], Fraction] = {}
    out: Dict[Key, Fraction] = {}
    if ta == "T":
        # both tensors
        _, m0, m1, u = ra
        _, n0, n1, v = rb
        for c, val in g.bracket(u, v).items():
            accumulate(out, ("G", m0 + n0, m1 + n1, c), val)
        f = g.form(u, v)
        if f:
            accumulate(forms, (m0 + n0, m1 + n1, 0), f * m0)
            accumulate(forms, (m0 + n0, m1 + n1, 1), f * m1)
    elif tb == "T":
        _, n0, n1, x = rb
        n = (n0, n1)
        for (m0, m1, i), c in ra.items():
            accumulate(out, ("G", m0 + n0, m1 + n1, x), c * n[i])
    elif tb == "K":
        for (m0, m1, i), c in ra.items():
            m = (m0, m1)
            for (n0, n1, j), d in rb.items():
                n = (n0, n1)
                s0, s1 = m0 + n0, m1 + n1
                accumulate(forms, (s0, s1, j), c * d * n[i])
                if i == j:
                    accumulate(forms, (s0, s1, 0), c * d * m0)
                    accumulate(forms, (s0, s1, 1), c * d * m1)
    else:
        for (m0, m1, i), c in ra.items():
            m = (m0, m1)
            for (n0, n1, j), d in rb.items():
                n = (n0, n1)
                s0, s1 = m0 + n0, m1 + n1
                cd = c * d
                accumulate(ders, (s0, s1, j), cd * n[i])
                accumulate(ders, (s0, s1, i), -cd * m[j])
                cocycle = -mu * m[j] * n[i] * cd
                if cocycle:
                    accumulate(forms, (s0, s1, 0), cocycle * m0)
                    accumulate(forms, (s0, s1, 1), cocycle * m1)
    _normalize_forms(forms, out)
    for key, v in normalize_derivation(ders, eps).items():
        accumulate(out, key, v)
    return tuple(sorted((k, v * sign) for k, v in out.items()))


def bracket_keys(a: Key, b: Key, ctx: ParamContext) -> AlgebraElement:
    return AlgebraElement(dict(table_bracket(bracket_table(ctx), a, b, ctx)))


def bracket(x: AlgebraElement, y: AlgebraElement, ctx: ParamContext) -> AlgebraElement:
    """Lie bracket [x, y] in the canonical basis."""
    table = bracket_table(ctx)
    out: Dict[Key, Fraction] = {}
    for a, ca in x.items():
        for b, cb in y.items():
            for k, v in table_bracket(table, a, b, ctx):
                accumulate(out, k, ca * cb * v)
    return AlgebraElement._wrap(out)


def jacobi_residual(x: AlgebraElement, y: AlgebraElement, z: AlgebraElement,
                    ctx: ParamContext) -> AlgebraElement:
    return (bracket(x, bracket(y, z, ctx), ctx)
            + bracket(y, bracket(z, x, ctx), ctx)
            + bracket(z, bracket(x, y, ctx), ctx))


# -- d^eps versus tilde d^eps --------------------------------------------------

def d_eps_correction(n: int, m: int, ctx: ParamContext) -> Fraction:
    """Coefficient of k_{n,m} in d^eps_{n,m} - tilde d^eps_{n,m}."""
    eps = ctx.epsilon
    return ctx.mu * (1 - eps) * (n + Fraction(1 - eps, 2)) * m * m


def d_eps(n: int, m: int, ctx: ParamContext) -> AlgebraElement:
    """d^eps_{n,m} in the canonical basis (for m = 0 this is (n-eps+1) t0^n d_1)."""
    eps = ctx.epsilon
    if m == 0:
        return t0_power(n, "d1", ctx).scale(n - eps + 1)
    out = {("DT", n, m): Fraction(1)}
    accumulate(out, ("KF", n, m), d_eps_correction(n, m, ctx))
    return AlgebraElement._wrap(out)


def d_eps_convert(n: int, m: int, direction: str, ctx: ParamContext) -> AlgebraElement:
    """Convert between tilde d^eps_{n,m} and d^eps_{n,m}.

    ``tilde_to_d`` returns d^eps_{n,m} in the canonical basis.  ``d_to_tilde``
    returns tilde d^eps_{n,m} written with the symbol ("DE", n, m) standing
    for d^eps_{n,m}, i.e. ``DE - c * k_{n,m}``.
    """
    if direction == "tilde_to_d":
        return d_eps(n, m, ctx)
    if direction == "d_to_tilde":
        if m == 0:
            return AlgebraElement({("DE", n, 0): 1})
        return AlgebraElement({("DE", n, m): 1, ("KF", n, m): -d_eps_correction(n, m, ctx)})
    raise ValueError(f"unknown direction {direction!r}")


def t0_power(n: int, which: str, ctx: ParamContext, a: int = None, m1: int = 0) -> AlgebraElement:
    """t0^n applied to an element of the affine subalgebra: t1^m1 (x) u_a, k1 or d1."""
    eps = ctx.epsilon
    if which == "u":
        return AlgebraElement({("G", n, m1, a): 1})
    if which == "k1":
        return kform_normalize(n, 0, 1)
    if which == "d1":
        if n == eps - 1:
            return AlgebraElement({D1Shift: 1})
        return AlgebraElement({("DT", n, 0): Fraction(1, n - eps + 1)})
    if which == "k0":
        return kform_normalize(n, m1, 0)
    raise ValueError(f"unknown generator {which!r}")


# -- the invariant form at eps = 1 --------------------------------------------

def form_check_eps1(x_key: Key, y_key: Key, ctx: ParamContext, printed: bool = False) -> Fraction:
    """Invariant symmetric form on basis keys when eps = 1.

    The pairing is (t^m k_a, t^n d_b) = delta_{ab} delta_{m+n,0} restricted to
    divergence-free derivations, so (k_n, tilde d_{-n}) = 1.  ``printed`` uses
    -1 for that pairing instead, which is not invariant.
    """
    if ctx.epsilon != 1:
        raise AlgebraError("the invariant form is only defined for eps = 1")
    a, b = sorted((x_key, y_key))
    if a[0] == "G" and b[0] == "G":
        if a[1] == -b[1] and a[2] == -b[2]:
            return ctx.base_algebra.form(a[3], b[3])
        return Fraction(0)
    pair = (a[0], b[0])
    if pair == ("D0", "K0") or pair == ("D1", "K1"):
        return Fraction(1)
    if pair == ("DT", "KF") and a[1] == -b[1] and a[2] == -b[2]:
        return Fraction(-1) if printed else Fraction(1)
    return Fraction(0)


def form_eps1(x: AlgebraElement, y: AlgebraElement, ctx: ParamContext, printed: bool = False) -> Fraction:
    total = Fraction(0)
    for a, ca in x.items():
        for b, cb in y.items():
            v = form_check_eps1(a, b, ctx, printed)
            if v:
                total += ca * cb * v
    return total


# -- sampling helpers ----------------------------------------------------------

def basis_keys(box: int, ctx: ParamContext, kinds: Iterable[str] = ("G", "K", "D")) -> list:
    """All canonical keys with |indices| <= box."""
    eps = ctx.epsilon
    rng = range(-box, box + 1)
    keys = []
    kinds = set(kinds)
    if "G" in kinds:
        keys += [("G", m0, m1, a) for m0 in rng for m1 in rng for a in range(ctx.base_algebra.dim)]
    if "K" in kinds:
        keys += [K0, K1] + [("KF", m0, m1) for m0 in rng for m1 in rng if (m0, m1) != (0, 0)]
    if "D" in kinds:
        keys += [D0Shift, D1Shift] + [
            ("DT", m0, m1) for m0 in rng for m1 in rng if (m0, m1) != (eps - 1, 0)]
    return keys



def jacobi_sweep(keys: Iterable[Key], ctx: ParamContext, faulty_ctx: ParamContext = None,
                 limit: int = 10):
    """Jacobi residual on every unordered triple of distinct basis keys.

    Returns ``(examined, failed, witnesses)`` where ``witnesses`` holds the
    first ``limit`` failing ``(triple, residual)`` pairs.  ``faulty_ctx``
    replaces ``ctx`` in the outer bracket of the third cyclic term.
    """
    keys = sorted(set(keys))
    table = bracket_table(ctx)
    outer3 = table if faulty_ctx is None else bracket_table(faulty_ctx)
    ctx3 = ctx if faulty_ctx is None else faulty_ctx

    def br(tab, c, a, b):
        hit = tab.get((a, b))
        return hit if hit is not None else table_bracket(tab, a, b, c)

    examined = failed = 0
    witnesses = []
    for i, x in enumerate(keys):
        for j in range(i + 1, len(keys)):
            y = keys[j]
            pxy = br(table, ctx, x, y)
            for z in keys[j + 1:]:
                pyz = br(table, ctx, y, z)
                pzx = br(table, ctx, z, x)
                examined += 1
                if not (pxy or pyz or pzx):
                    continue
                out: Dict[Key, Fraction] = {}
                for a, inner, tab, c in ((x, pyz, table, ctx), (y, pzx, table, ctx),
                                         (z, pxy, outer3, ctx3)):
                    for k, v in inner:
                        for k2, v2 in br(tab, c, a, k):
                            out[k2] = out.get(k2, 0) + v * v2
                if any(out.values()):
                    failed += 1
                    if len(witnesses) < limit:
                        witnesses.append(((x, y, z), AlgebraElement({k: v for k, v in out.items() if v})))
    return examined, failed, witnesses
