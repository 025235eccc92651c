"""Identity suites and the runner that executes them over a sample plan.

Index boxes are enumerated exhaustively; randomness only picks module test
vectors, from a generator seeded by the configuration.  Every suite has a
fault mode (``cfg.fault``) that perturbs exactly one side of its identity:

    scalars          products evaluated through binary floating point
    lemma22, newton  right-hand side evaluated at eps + 1
    prop23           left-hand brackets taken with mu + 1
    jacobi           third cyclic term bracketed with mu + 1
    phi              outer map of the composition law built at eps + 1
    hcoeffs          series inversion done at eps + 1
    u1corr           reference polynomials evaluated at eps + 1
    fock_conditions  E-field derivative condition compared against (n + 1) k
    realization      module operators built with mu + 1
    degree_zero      loop-module weight b shifted by 1
    form_eps1        pairing (k_n, tilde d_{-n}) taken as -1
"""

from __future__ import annotations

import random
import time
from fractions import Fraction
from itertools import combinations
from math import comb, factorial
from typing import Callable, Dict, List

from ..algebra import (AlgebraError, AlgebraElement, basis_keys, bracket, form_eps1,
                       jacobi_sweep)
from ..fock.action import (Realization, RealizationError, commutator_residual_vec,
                           exp_field_conditions_residual, normal_order_shift_residual)
from ..fock.fields import Deriv, EField, K_EPS, NormalOrdered, Scaled
from ..fock.module import FockModule, ModuleVector, basis_vectors, fock_vectors
from ..fock.tmodule import degree_zero_module_compare, t_module_b
from ..galgebra import PRESETS
from ..genfun import Prop23Error, prop23_residual, relation_label_samples
from ..identities import lemma22_sides, newton_sides
from ..phi import (associate_axioms_residual, f_eps_composition_residual, h_closed,
                   h_inverted, phi_closed, phi_eps, u_minus1_correction)
from ..report import CheckReport
from ..scalars import Combination, ParamContext, ScalarError, to_q
from ..series import SeriesError, TruncatedSeries
from .config import SUITE_NAMES, SuiteConfig

# rational grid for (a, b, alpha, beta)
GRID5 = (
    (Fraction(0), Fraction(0), Fraction(0), Fraction(0)),
    (Fraction(1), Fraction(2), Fraction(3), Fraction(-1)),
    (Fraction(1, 2), Fraction(-3, 4), Fraction(2, 3), Fraction(5)),
    (Fraction(-7, 3), Fraction(5, 2), Fraction(-1, 5), Fraction(1, 7)),
    (Fraction(11, 6), Fraction(-2), Fraction(9, 4), Fraction(-3, 8)),
)

SCALAR_GRID = (Fraction(0), Fraction(1), Fraction(-1), Fraction(1, 3), Fraction(-2, 7),
               Fraction(22, 7), Fraction(5, 12))

MAX_WITNESSES = 3


class SuiteAbort(RuntimeError):
    """An internal inconsistency stopped the run; the report holds the witness."""

    def __init__(self, report: CheckReport, message: str):
        super().__init__(message)
        self.report = report


def make_ctx(eps: int, point, algebra: str = "abelian") -> ParamContext:
    mu, ell, alpha, beta = point
    return ParamContext(eps, mu=mu, ell=ell, alpha=alpha, beta=beta,
                        base_algebra=PRESETS[algebra]())


def point_params(point) -> Dict[str, Fraction]:
    return dict(zip(("mu", "ell", "alpha", "beta"), point))


def point_id(point) -> str:
    return " ".join(f"{k}={v}" for k, v in point_params(point).items())


def _seeded(cfg: SuiteConfig, *tags) -> random.Random:
    return random.Random(":".join(str(t) for t in (cfg.rng_seed,) + tags))


def _sample(items: List, cfg: SuiteConfig, rng: random.Random) -> List:
    if cfg.vector_samples and len(items) > cfg.vector_samples:
        return sorted(rng.sample(items, cfg.vector_samples))
    return items


def _witness(failures: List[str], count: int) -> str:
    more = f" (+{count - len(failures)} more)" if count > len(failures) else ""
    return "; ".join(failures) + more


# -- scalars -------------------------------------------------------------------

def _float_mul(a: Fraction, b: Fraction) -> Fraction:
    return Fraction(float(a) * float(b))


def suite_scalars(cfg: SuiteConfig, report: CheckReport) -> None:
    mul = _float_mul if cfg.fault else (lambda a, b: a * b)
    for a in SCALAR_GRID:
        for b in SCALAR_GRID:
            for c in SCALAR_GRID:
                res = {
                    "distributive": mul(a, b + c) - (a * b + a * c),
                    "associative": mul(a, b * c) - (a * b) * c,
                    "additive_inverse": (a + b) - b - a,
                    "text_roundtrip": to_q(str(a)) - a,
                }
                if b:
                    res["division"] = mul(a / b, b) - a
                x, y = Combination({"x": a, "y": c}), Combination({"y": b})
                res["combination"] = Fraction(((x + y) - y) != x)
                report.add("scalars", f"a={a} b={b} c={c}", {"a": a, "b": b, "c": c},
                           residual={k: v for k, v in res.items() if v})


# -- lemma22 / newton ----------------------------------------------------------

def suite_lemma22(cfg: SuiteConfig, report: CheckReport) -> None:
    for eps in cfg.epsilon_values:
        for p in range(cfg.p_max + 1):
            for k, (a, b, alpha, beta) in enumerate(GRID5):
                lhs, _ = lemma22_sides(p, a, b, alpha, beta, eps)
                _, rhs = lemma22_sides(p, a, b, alpha, beta, eps + 1 if cfg.fault else eps)
                report.add("lemma22", f"eps={eps} p={p} grid={k}",
                           {"eps": eps, "p": p, "a": a, "b": b, "alpha": alpha, "beta": beta},
                           residual=lhs - rhs)


def suite_newton(cfg: SuiteConfig, report: CheckReport) -> None:
    for eps in cfg.epsilon_values:
        for p in range(cfg.p_max + 1):
            for k, (a, b, _, _) in enumerate(GRID5):
                lhs, _ = newton_sides(a, b, p, eps)
                _, rhs = newton_sides(a, b, p, eps + 1 if cfg.fault else eps)
                report.add("newton", f"eps={eps} p={p} grid={k}",
                           {"eps": eps, "p": p, "a": a, "b": b}, residual=lhs - rhs)


# -- generating-function relations ---------------------------------------------

def suite_prop23(cfg: SuiteConfig, report: CheckReport) -> None:
    box = range(-cfg.index_box, cfg.index_box + 1)
    for alg in cfg.algebras:
        for eps in cfg.epsilon_values:
            for mu in cfg.mu_values():
                ctx = make_ctx(eps, (mu, 1, 0, 0), alg)
                bctx = ctx.replace(mu=mu + 1) if cfg.fault else None
                dim = ctx.base_algebra.dim
                for rel in range(1, 13):
                    # relation 12 involves a single series, indexed by j
                    pairs = [(0, j) for j in box] if rel == 12 else [(i, j) for i in box for j in box]
                    checks = failed = 0
                    failures: List[str] = []
                    for labels in relation_label_samples(rel, cfg.label_box, dim):
                        for i, j in pairs:
                            res = prop23_residual(rel, labels, (i, j), ctx, bracket_ctx=bctx)
                            checks += 1
                            if res:
                                failed += 1
                                if len(failures) < MAX_WITNESSES:
                                    failures.append(f"{labels} i={i} j={j}: {res.to_text()}")
                    report.add("prop23", f"{alg} eps={eps} mu={mu} relation={rel}",
                               {"algebra": alg, "eps": eps, "mu": mu, "relation": rel,
                                "checks": checks},
                               passed=not failed, witness=_witness(failures, failed))


# -- Jacobi --------------------------------------------------------------------

def suite_jacobi(cfg: SuiteConfig, report: CheckReport) -> None:
    for alg in cfg.algebras:
        for eps in cfg.epsilon_values:
            for mu in cfg.mu_values():
                ctx = make_ctx(eps, (mu, 1, 0, 0), alg)
                faulty = ctx.replace(mu=mu + 1) if cfg.fault else None
                keys = basis_keys(cfg.index_box, ctx)
                examined, failed, witnesses = jacobi_sweep(keys, ctx, faulty, MAX_WITNESSES)
                text = [f"{t}: {r.to_text()}" for t, r in witnesses]
                report.add("jacobi", f"{alg} eps={eps} mu={mu} box={cfg.index_box}",
                           {"algebra": alg, "eps": eps, "mu": mu, "triples": examined},
                           passed=not failed, witness=_witness(text, failed))


# -- formal series -------------------------------------------------------------

def _exact_phi(eps: int, order: int):
    if eps == 0:
        # w + z
        return TruncatedSeries({(0, 1): 1, (1, 0): 1}, order)
    if eps == 1:
        # w e^z
        return TruncatedSeries({(n, 1): Fraction(1, factorial(n)) for n in range(order + 1)}, order)
    return None


def suite_phi(cfg: SuiteConfig, report: CheckReport) -> None:
    order = cfg.truncation_order
    for eps in cfg.epsilon_values:
        unit, comp = associate_axioms_residual(eps, order, eps + 1 if cfg.fault else None)
        params = {"eps": eps, "order": order}
        report.add("phi", f"eps={eps} unit", params, residual=unit.to_text() if unit.terms else None)
        report.add("phi", f"eps={eps} composition", params,
                   residual=comp.to_text() if comp.terms else None)
        phi = phi_eps(eps, order)
        closed = phi - phi_closed(eps, order)
        report.add("phi", f"eps={eps} closed_form", params,
                   residual=closed.to_text() if closed.terms else None)
        f_res = f_eps_composition_residual(eps, order)
        report.add("phi", f"eps={eps} f_inverse", params,
                   residual=f_res.to_text() if f_res.terms else None)
        exact = _exact_phi(eps, order)
        if exact is not None:
            diff = phi - exact
            report.add("phi", f"eps={eps} exact", params,
                       residual=diff.to_text() if diff.terms else None)


def bernoulli_over_factorial(nmax: int) -> List[Fraction]:
    """Coefficients of z / (e^z - 1), via sum_{k<=n} C(n+1, k) B_k = 0."""
    b = [Fraction(1)]
    for n in range(1, nmax + 1):
        b.append(-sum((comb(n + 1, k) * b[k] for k in range(n)), Fraction(0)) / (n + 1))
    return [b[n] / factorial(n) for n in range(nmax + 1)]


def suite_hcoeffs(cfg: SuiteConfig, report: CheckReport) -> None:
    nmax = cfg.truncation_order
    bern = bernoulli_over_factorial(nmax)
    for eps in cfg.epsilon_values:
        inverted = h_inverted(eps + 1 if cfg.fault else eps, nmax)
        for n in range(nmax + 1):
            closed = h_closed(eps, n)
            res = {"closed_vs_inverted": closed - inverted[n]}
            if eps == 1:
                res["bernoulli"] = closed - bern[n]
            report.add("hcoeffs", f"eps={eps} n={n}", {"eps": eps, "n": n, "h": closed},
                       residual={k: v for k, v in res.items() if v})


def u1corr_reference(eps: int) -> List[Fraction]:
    e = Fraction(eps)
    return [e / 2, (5 * e - 4) * e / 12, (3 * e * e - 5 * e + 2) * e / 8]


def suite_u1corr(cfg: SuiteConfig, report: CheckReport) -> None:
    for eps in cfg.epsilon_values:
        got = u_minus1_correction(eps, 2)
        want = u1corr_reference(eps + 1 if cfg.fault else eps)
        for n in range(3):
            report.add("u1corr", f"eps={eps} c{n}", {"eps": eps, "n": n, "value": got[n]},
                       residual=got[n] - want[n])


# -- Fock-space identities -------------------------------------------------------

def _derivative_fault(n: int, p: int, v: ModuleVector, mod: FockModule) -> ModuleVector:
    w = dict(v.items())
    lhs = Deriv(EField(n)).apply(p, w, mod)
    rhs = Scaled(NormalOrdered(K_EPS, EField(n)), Fraction(n + 1) / mod.ctx.ell).apply(p, w, mod)
    return ModuleVector(lhs) - ModuleVector(rhs)


def suite_fock_conditions(cfg: SuiteConfig, report: CheckReport) -> None:
    """Coefficients z^p with p - offset in [-deg v, index_box]; below that
    window every coefficient vanishes on v for degree reasons."""
    B = cfg.index_box
    for eps in cfg.epsilon_values:
        for point in cfg.parameter_points:
            ctx = make_ctx(eps, point)
            mod = FockModule(ctx)
            rng = _seeded(cfg, "fock_conditions", eps, point)
            vecs = _sample(fock_vectors(cfg.degree_cap, cfg.charges), cfg, rng)
            for hw, r in vecs:
                v = ModuleVector({((), 0, hw, r): 1})
                deg = sum(-m for m, _ in hw)
                failures: List[str] = []
                failed = 0

                def record(label: str, res) -> None:
                    nonlocal failed
                    if res:
                        failed += 1
                        if len(failures) < MAX_WITNESSES:
                            failures.append(f"{label}: {res.to_text()}")

                center = 2 * eps - 2
                for p in range(center - deg, center + B + 1):
                    record(f"shift p={p}", normal_order_shift_residual(p, v, mod))
                for n in range(-B, B + 1):
                    for p in range(-deg, B + 1):
                        for m in range(-B, B + 1):
                            out = exp_field_conditions_residual(n, m, p, v, mod, ("product",))
                            record(f"product n={n} m={m} p={p}", out["product"])
                    lo, hi = eps - 1 - deg, eps - 1 + B
                    for p in range(min(lo, -deg), max(hi, B) + 1):
                        out = exp_field_conditions_residual(n, 0, p, v, mod, ("unit", "derivative"))
                        if cfg.fault:
                            out["derivative"] = _derivative_fault(n, p, v, mod)
                        record(f"unit p={p}", out["unit"])
                        record(f"derivative n={n} p={p}", out["derivative"])
                report.add("fock_conditions", f"eps={eps} {point_id(point)} {hw} r={r}",
                           dict(point_params(point), eps=eps, vector=f"{hw}|{r}"),
                           passed=not failed, witness=_witness(failures, failed))


def realization_keys(ctx: ParamContext, box: int) -> List[tuple]:
    """The generators of the realization with |t0-, t1-exponents| <= box."""
    return sorted(basis_keys(box, ctx))


def suite_realization(cfg: SuiteConfig, report: CheckReport) -> None:
    for alg in cfg.algebras:
        for eps in cfg.epsilon_values:
            for point in cfg.parameter_points:
                ctx = make_ctx(eps, point, alg)
                rz = Realization(ctx, Fraction(1) if cfg.fault else Fraction(0))
                rng = _seeded(cfg, "realization", alg, eps, point)
                vecs = _sample(basis_vectors(ctx, cfg.degree_cap, cfg.charges), cfg, rng)
                keys = realization_keys(ctx, cfg.generator_box)
                elems = {k: AlgebraElement({k: 1}) for k in keys}
                for x, y in combinations(keys, 2):
                    failures: List[str] = []
                    failed = 0
                    for vk in vecs:
                        res = commutator_residual_vec(elems[x], elems[y], {vk: Fraction(1)}, rz, ctx)
                        if res:
                            failed += 1
                            if len(failures) < MAX_WITNESSES:
                                failures.append(f"on {ModuleVector({vk: 1}).to_text()}: "
                                                f"{ModuleVector(res).to_text()}")
                    report.add("realization", f"{alg} eps={eps} {point_id(point)} {x} {y}",
                               dict(point_params(point), algebra=alg, eps=eps,
                                    vectors=len(vecs)),
                               passed=not failed, witness=_witness(failures, failed))


def suite_degree_zero(cfg: SuiteConfig, report: CheckReport) -> None:
    rng_ = range(-cfg.index_box, cfg.index_box + 1)
    for alg in cfg.algebras:
        for eps in cfg.epsilon_values:
            for point in cfg.parameter_points:
                ctx = make_ctx(eps, point, alg)
                b = t_module_b(ctx) + (1 if cfg.fault else 0)
                sub = degree_zero_module_compare(rng_, rng_, ctx, b=b)
                for c in sub.cases:
                    report.add(c.suite, f"{alg} {c.case} {point_id(point)}",
                               dict(c.params, algebra=alg), passed=c.passed, witness=c.witness)


def suite_form_eps1(cfg: SuiteConfig, report: CheckReport) -> None:
    for alg in cfg.algebras:
        for mu in cfg.mu_values():
            ctx = make_ctx(1, (mu, 1, 0, 0), alg)
            keys = sorted(basis_keys(cfg.index_box, ctx))
            elems = [AlgebraElement({k: 1}) for k in keys]
            checks = failed = 0
            failures: List[str] = []
            for i, x in enumerate(elems):
                for j, y in enumerate(elems):
                    xy = bracket(x, y, ctx)
                    sym = form_eps1(x, y, ctx, cfg.fault) - form_eps1(y, x, ctx, cfg.fault)
                    for z in elems[j:] if i <= j else ():
                        lhs = form_eps1(xy, z, ctx, cfg.fault)
                        rhs = form_eps1(x, bracket(y, z, ctx), ctx, cfg.fault)
                        checks += 1
                        if lhs != rhs:
                            failed += 1
                            if len(failures) < MAX_WITNESSES:
                                failures.append(f"([{keys[i]},{keys[j]}],{z.to_text()}) - "
                                                f"({keys[i]},[{keys[j]},{z.to_text()}]) = {lhs - rhs}")
                    if sym:
                        failed += 1
                        if len(failures) < MAX_WITNESSES:
                            failures.append(f"asymmetric on {keys[i]}, {keys[j]}: {sym}")
            report.add("form_eps1", f"{alg} mu={mu} box={cfg.index_box}",
                       {"algebra": alg, "mu": mu, "checks": checks},
                       passed=not failed, witness=_witness(failures, failed))


SUITES: Dict[str, Callable[[SuiteConfig, CheckReport], None]] = {
    "scalars": suite_scalars,
    "lemma22": suite_lemma22,
    "newton": suite_newton,
    "prop23": suite_prop23,
    "jacobi": suite_jacobi,
    "phi": suite_phi,
    "hcoeffs": suite_hcoeffs,
    "u1corr": suite_u1corr,
    "fock_conditions": suite_fock_conditions,
    "realization": suite_realization,
    "degree_zero": suite_degree_zero,
    "form_eps1": suite_form_eps1,
}

INTERNAL_ERRORS = (AlgebraError, RealizationError, Prop23Error, SeriesError, ScalarError,
                   ArithmeticError)


def run_suites(cfg: SuiteConfig) -> CheckReport:
    """Run every selected suite; raises SuiteAbort on an internal inconsistency."""
    cfg.validate()
    report = CheckReport()
    start = time.perf_counter()
    selected = set(cfg.suites)
    try:
        for name in SUITE_NAMES:
            if name in selected:
                try:
                    SUITES[name](cfg, report)
                except INTERNAL_ERRORS as exc:
                    report.add(name, "aborted", {}, passed=False,
                               witness=f"{type(exc).__name__}: {exc}")
                    raise SuiteAbort(report, f"suite {name} aborted: {exc}") from exc
    finally:
        report.wall_time = time.perf_counter() - start
    return report
