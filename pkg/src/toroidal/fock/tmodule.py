"""The loop module T_{U,ell,a,b} over the degree-zero subalgebra, and the comparison with rho.

For eps != 1 the module is pulled back along the map onto the centerless
affine-Virasoro algebra (k1 -> 0, d^eps_{0,m} -> (1-eps) t^{m+1} d/dt, ...),
with t^{m+1} d/dt acting by (n + a + b m).  For eps = 1 the degree-zero
subalgebra is an affine algebra and T is its loop module.  Vectors are
``{(n, i): coeff}`` for t^n (x) u_i.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, List, Tuple

from ..algebra import D0Shift, D1Shift, K0, K1, d_eps_correction, grading_degree
from ..scalars import ParamContext, accumulate
from .action import Realization

TKey = Tuple[int, int]


def t_module_b(ctx: ParamContext) -> Fraction:
    """The weight b identifying the top of the realization with T_{U,ell,alpha,b}."""
    eps, mu, ell, beta = ctx.epsilon, ctx.mu, ctx.ell, ctx.beta
    if eps == 1:
        return mu * ell - beta
    return (beta + (eps * eps - 2 * eps) * mu * ell) / (1 - eps) + Fraction(eps, 2)


def degree_zero_keys(ctx: ParamContext, box: int) -> List[tuple]:
    """Canonical keys of grading degree 0 with |t1-exponent| <= box."""
    eps = ctx.epsilon
    keys = [K0, K1]
    rng = range(-box, box + 1)
    keys += [("G", 0, m, a) for m in rng for a in range(ctx.base_algebra.dim)]
    keys += [("KF", 0, m) for m in rng if m]
    keys += [("DT", 0, m) for m in rng if not (m == 0 and eps == 1)]
    if eps == 1:
        keys += [D0Shift, D1Shift]
    return [k for k in keys if grading_degree(k, eps) == 0]


def t_module_act(key: tuple, n: int, i: int, ctx: ParamContext, a: Fraction, b: Fraction
                 ) -> Dict[TKey, Fraction]:
    """A degree-zero basis key acting on t^n (x) u_i in T_{U,ell,a,b}."""
    eps, ell = ctx.epsilon, ctx.ell
    g = ctx.base_algebra
    tag = key[0]
    out: Dict[TKey, Fraction] = {}
    if tag == "G":
        _, _, m, x = key
        for j, c in g.module.act(x, i).items():
            out[(n + m, j)] = c
        return out
    if tag == "K0":
        return {(n, i): ell}
    if tag == "K1":
        return {}
    if tag == "KF":
        m = key[2]
        # k_{0,m} = (1/m) t1^m k0 and t1^m k0 acts as ell t^m
        return {(n + m, i): ell / m}
    if eps != 1:
        if tag == "DT":
            m = key[2]
            # tilde d_{0,m} = d_{0,m} - corr k_{0,m};  d_{0,m} -> (1-eps) t^{m+1} d/dt
            val = (1 - eps) * (n + a + b * m)
            if m:
                val -= d_eps_correction(0, m, ctx) * ell / m
            accumulate(out, (n + m, i), val)
            return out
    else:
        if tag == "D1":
            accumulate(out, (n, i), n + a)
            return out
        if tag == "D0":
            accumulate(out, (n, i), b)
            return out
        if tag == "DT":
            m = key[2]
            # at eps = 1, tilde d_{0,m} = -m t1^m d0 and t1^m d0 -> d(m) acts as b
            accumulate(out, (n + m, i), -m * b)
            return out
    raise ValueError(f"{key!r} is not a degree-zero basis key")


def tg0_formula(key: tuple, n: int, i: int, ctx: ParamContext) -> Dict[TKey, Fraction]:
    """The degree-zero action written directly in terms of (alpha, beta, mu, ell)."""
    eps, mu, ell, alpha, beta = ctx.epsilon, ctx.mu, ctx.ell, ctx.alpha, ctx.beta
    tag = key[0]
    out: Dict[TKey, Fraction] = {}
    if tag in ("G", "K0", "K1", "KF"):
        return t_module_act(key, n, i, ctx, alpha, Fraction(0))
    if tag == "D1" or (tag == "DT" and key[2] == 0):
        # d1 itself, or tilde d_{0,0} = (1 - eps) d1
        scale = 1 if tag == "D1" else 1 - eps
        accumulate(out, (n, i), scale * (n + alpha))
        return out
    if tag == "D0":
        accumulate(out, (n, i), mu * ell - beta)
        return out
    k = key[2]
    val = k * (beta + (eps * eps - 2 * eps) * mu * ell) + (1 - eps) * (alpha + n + Fraction(k * eps, 2))
    val -= d_eps_correction(0, k, ctx) * ell / k
    accumulate(out, (n + k, i), val)
    return out


def rho_on_top(rz: Realization, key: tuple, r: int, i: int) -> Dict[TKey, Fraction]:
    """rho(key) on u_i (x) e^{(alpha + r) k}, read back as {(r', i'): coeff}."""
    out: Dict[TKey, Fraction] = {}
    for (vw, j, hw, r2), c in rz.rho_basis(key, ((), i, (), r)).items():
        if vw or hw:
            raise ArithmeticError(f"{key!r} leaves the degree-zero space")
        accumulate(out, (r2, j), c)
    return out


def _text(vec: Dict[TKey, Fraction]) -> str:
    if not vec:
        return "0"
    return " + ".join(f"({c})*t^{n}(x)u{i}" for (n, i), c in sorted(vec.items()))


def degree_zero_module_compare(n_range: Iterable[int], r_range: Iterable[int], ctx: ParamContext,
                               realization: Realization = None, b: Fraction = None):
    """Compare rho on U (x) e^{alpha k} C[L] with T_{U,ell,alpha,b}, key by key.

    Each case checks one degree-zero key on one vector u_i (x) e^{(alpha + r) k}
    against the loop-module action on t^r (x) u_i.  ``n_range`` bounds the
    t1-exponents of the keys.  ``b`` overrides the loop-module weight.
    """
    from ..report import CheckReport

    rz = realization or Realization(ctx)
    b = t_module_b(ctx) if b is None else b
    n_range = set(n_range)
    keys = [k for k in degree_zero_keys(ctx, max(abs(n) for n in n_range))
            if k[0] not in ("G", "KF", "DT") or k[2] in n_range]
    report = CheckReport()
    params = {"eps": ctx.epsilon, "mu": ctx.mu, "ell": ctx.ell, "alpha": ctx.alpha,
              "beta": ctx.beta, "b": b}
    for key in keys:
        for r in r_range:
            for i in range(ctx.base_algebra.module.dim):
                got = rho_on_top(rz, key, r, i)
                want = t_module_act(key, r, i, ctx, ctx.alpha, b)
                diff = dict(got)
                for k, c in want.items():
                    accumulate(diff, k, -c)
                witness = None if not diff else f"rho: {_text(got)}; T: {_text(want)}"
                report.add("degree_zero", f"eps={ctx.epsilon} {key} r={r} u{i}", params,
                           passed=not diff, witness=witness)
    return report
