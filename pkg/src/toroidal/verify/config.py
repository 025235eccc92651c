"""Suite configuration: an INI file, command-line overrides and validation.

File format (section ``[verify]``; every key optional)::

    [verify]
    suites = lemma22, newton, jacobi
    epsilon = -1, 0, 1, 2
    # one parameter point per ';'-separated group: mu ell alpha beta
    points = 0 1 0 0; 1/3 2 1/5 7
    algebras = abelian, sl2
    index_box = 2
    label_box = 2
    generator_box = 1
    degree_cap = 5
    vector_samples = 8
    charges = -1, 0, 1
    order = 8
    p_max = 6
    seed = 0
    report = text
    fault = false

Rationals are written ``p/q`` or as integers; floats are rejected.
"""

from __future__ import annotations

import configparser
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

from ..galgebra import PRESETS

SUITE_NAMES = ("scalars", "lemma22", "newton", "prop23", "jacobi", "phi", "hcoeffs", "u1corr",
               "fock_conditions", "realization", "degree_zero", "form_eps1")

Point = Tuple[Fraction, Fraction, Fraction, Fraction]


class ConfigError(ValueError):
    """Invalid configuration; ``problems`` lists (field, message) pairs."""

    def __init__(self, problems: Sequence[Tuple[str, str]]):
        self.problems = list(problems)
        super().__init__("; ".join(f"{f}: {m}" for f, m in self.problems))


@dataclass(frozen=True)
class SuiteConfig:
    suites: Tuple[str, ...] = SUITE_NAMES
    epsilon_values: Tuple[int, ...] = (-1, 0, 1, 2)
    parameter_points: Tuple[Point, ...] = (
        (Fraction(0), Fraction(1), Fraction(0), Fraction(0)),
        (Fraction(1, 3), Fraction(2), Fraction(1, 5), Fraction(7)),
    )
    algebras: Tuple[str, ...] = ("abelian", "sl2")
    index_box: int = 2
    label_box: int = 2
    generator_box: int = 1
    degree_cap: int = 5
    vector_samples: int = 8
    charges: Tuple[int, ...] = (-1, 0, 1)
    truncation_order: int = 8
    p_max: int = 6
    rng_seed: int = 0
    report_format: str = "text"
    fault: bool = False

    def validate(self) -> "SuiteConfig":
        problems: List[Tuple[str, str]] = []
        unknown = [s for s in self.suites if s not in SUITE_NAMES]
        if unknown:
            problems.append(("suites", f"unknown suite(s) {', '.join(unknown)}"))
        if not self.suites:
            problems.append(("suites", "no suite selected"))
        for e in self.epsilon_values:
            if isinstance(e, bool) or not isinstance(e, int):
                problems.append(("epsilon", f"{e!r} is not an integer"))
        if not self.epsilon_values:
            problems.append(("epsilon", "at least one value is required"))
        if not self.parameter_points:
            problems.append(("points", "at least one parameter point is required"))
        for k, pt in enumerate(self.parameter_points):
            if len(pt) != 4:
                problems.append((f"points[{k}]", "expected four values mu ell alpha beta"))
            elif pt[1] == 0:
                problems.append((f"points[{k}].ell", "the level ell must be nonzero"))
        for name in self.algebras:
            if name not in PRESETS:
                problems.append(("algebras", f"unknown algebra {name!r}"))
        for name in ("index_box", "label_box", "generator_box", "degree_cap", "vector_samples",
                     "truncation_order", "p_max"):
            v = getattr(self, name)
            if isinstance(v, bool) or not isinstance(v, int) or v < 0:
                problems.append((name, f"must be a nonnegative integer, got {v!r}"))
        if not 0 <= self.rng_seed < 2 ** 64:
            problems.append(("seed", "must be a 64-bit unsigned integer"))
        if self.report_format not in ("text", "json"):
            problems.append(("report", f"must be text or json, got {self.report_format!r}"))
        if problems:
            raise ConfigError(problems)
        return self

    def mu_values(self) -> Tuple[Fraction, ...]:
        return tuple(sorted({p[0] for p in self.parameter_points}))

    def replace(self, **changes) -> "SuiteConfig":
        return replace(self, **changes)


# -- parsing -------------------------------------------------------------------

def parse_rational(text: str, name: str) -> Fraction:
    text = text.strip()
    if not text or any(ch in text for ch in ".eE"):
        raise ConfigError([(name, f"{text!r} is not a rational of the form p/q")])
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ConfigError([(name, f"{text!r} is not a rational of the form p/q")]) from None


def parse_int(text: str, name: str) -> int:
    try:
        return int(str(text).strip())
    except ValueError:
        raise ConfigError([(name, f"{text!r} is not an integer")]) from None


def parse_list(text: str) -> List[str]:
    return [t.strip() for t in text.replace(";", ",").split(",") if t.strip()]


def parse_int_list(text: str, name: str) -> Tuple[int, ...]:
    out = []
    for item in parse_list(text):
        if ".." in item:
            lo, hi = item.split("..", 1)
            out.extend(range(parse_int(lo, name), parse_int(hi, name) + 1))
        else:
            out.append(parse_int(item, name))
    return tuple(out)


def parse_points(text: str) -> Tuple[Point, ...]:
    points = []
    for k, group in enumerate(g for g in text.split(";") if g.strip()):
        vals = group.replace(",", " ").split()
        if len(vals) != 4:
            raise ConfigError([(f"points[{k}]", "expected four values mu ell alpha beta")])
        points.append(tuple(parse_rational(v, f"points[{k}]") for v in vals))
    return tuple(points)


def parse_bool(text: str, name: str) -> bool:
    t = text.strip().lower()
    if t in ("1", "true", "yes", "on"):
        return True
    if t in ("0", "false", "no", "off"):
        return False
    raise ConfigError([(name, f"{text!r} is not a boolean")])


_INT_FIELDS = {"index_box": "index_box", "label_box": "label_box", "generator_box": "generator_box",
               "degree_cap": "degree_cap", "vector_samples": "vector_samples",
               "order": "truncation_order", "p_max": "p_max", "seed": "rng_seed"}


def config_from_mapping(values: dict, base: Optional[SuiteConfig] = None) -> SuiteConfig:
    """Apply string-valued settings (file keys) on top of ``base``."""
    cfg = base or SuiteConfig()
    changes = {}
    problems: List[Tuple[str, str]] = []
    for key, raw in values.items():
        try:
            if key == "suites":
                changes["suites"] = tuple(parse_list(raw))
            elif key == "epsilon":
                changes["epsilon_values"] = parse_int_list(raw, key)
            elif key == "points":
                changes["parameter_points"] = parse_points(raw)
            elif key == "algebras":
                changes["algebras"] = tuple(parse_list(raw))
            elif key == "charges":
                changes["charges"] = parse_int_list(raw, key)
            elif key in _INT_FIELDS:
                changes[_INT_FIELDS[key]] = parse_int(raw, key)
            elif key == "report":
                changes["report_format"] = raw.strip()
            elif key == "fault":
                changes["fault"] = parse_bool(raw, key)
            else:
                problems.append((key, "unknown setting"))
        except ConfigError as exc:
            problems.extend(exc.problems)
    if problems:
        raise ConfigError(problems)
    return cfg.replace(**changes)


def load_config(path, base: Optional[SuiteConfig] = None) -> SuiteConfig:
    parser = configparser.ConfigParser(inline_comment_prefixes=("#",))
    try:
        with open(path, encoding="utf-8") as fh:
            parser.read_file(fh)
    except OSError as exc:
        raise ConfigError([("config", str(exc))]) from None
    except configparser.Error as exc:
        raise ConfigError([("config", str(exc).splitlines()[0])]) from None
    if not parser.has_section("verify"):
        raise ConfigError([("config", "missing [verify] section")])
    return config_from_mapping(dict(parser.items("verify")), base)


def override_points(points: Tuple[Point, ...], mus: Iterable[Fraction], ells: Iterable[Fraction],
                    alphas: Iterable[Fraction], betas: Iterable[Fraction]) -> Tuple[Point, ...]:
    """Cartesian product of the given component lists; missing lists keep the
    components of the existing points."""
    mus, ells, alphas, betas = (list(x) if x else None for x in (mus, ells, alphas, betas))
    if not any((mus, ells, alphas, betas)):
        return points
    out = []
    for base in points:
        for mu in mus or [base[0]]:
            for ell in ells or [base[1]]:
                for a in alphas or [base[2]]:
                    for b in betas or [base[3]]:
                        pt = (mu, ell, a, b)
                        if pt not in out:
                            out.append(pt)
    return tuple(out)
