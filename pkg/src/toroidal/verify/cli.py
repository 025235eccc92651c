"""Command-line entry point: ``toroidal-verify`` / ``python -m toroidal``.

Exit status: 0 when every case passes, 1 on a failed check or an aborted
suite, 2 on a configuration or usage error.
"""

from __future__ import annotations

import argparse
import sys
from typing import List, Optional

from ..report import emit_report
from .config import (SUITE_NAMES, ConfigError, SuiteConfig, load_config, override_points,
                     parse_int, parse_int_list, parse_list, parse_rational)
from .suites import SuiteAbort, run_suites

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="toroidal-verify",
                description="Check the toroidal-algebra identities exactly over a sample plan.")
    p.add_argument("--config", metavar="FILE", help="INI file with a [verify] section")
    p.add_argument("--suite", action="append", metavar="NAME",
                   help=f"suite to run (repeatable or comma separated): {', '.join(SUITE_NAMES)}, all")
    p.add_argument("--epsilon", help="comma list of integers, ranges as a..b")
    p.add_argument("--mu", help="comma list of rationals")
    p.add_argument("--ell", help="comma list of nonzero rationals")
    p.add_argument("--alpha", help="comma list of rationals")
    p.add_argument("--beta", help="comma list of rationals")
    p.add_argument("--algebra", action="append", metavar="NAME", help="abelian or sl2 (repeatable)")
    p.add_argument("--index-box", help="bound on sampled indices")
    p.add_argument("--label-box", help="bound on generating-series labels")
    p.add_argument("--generator-box", help="bound on realization generator indices")
    p.add_argument("--degree-cap", help="maximal degree of module test vectors")
    p.add_argument("--samples", help="module test vectors per configuration (0 = all)")
    p.add_argument("--charges", help="lattice charges r of module test vectors")
    p.add_argument("--order", help="truncation order of formal series")
    p.add_argument("--seed", help="64-bit seed for choosing module test vectors")
    p.add_argument("--report", choices=("text", "json"), help="report format")
    p.add_argument("--output", metavar="FILE", help="write the report here instead of stdout")
    p.add_argument("--fault", action="store_true", help="run every suite in fault-injection mode")
    p.add_argument("--timing", action="store_true", help="include wall time in the report")
    return p


def _rationals(text: Optional[str], name: str):
    return [parse_rational(t, name) for t in parse_list(text)] if text else None


def config_from_args(args: argparse.Namespace) -> SuiteConfig:
    cfg = load_config(args.config) if args.config else SuiteConfig()
    changes = {}
    if args.suite:
        names = [n for item in args.suite for n in parse_list(item)]
        changes["suites"] = SUITE_NAMES if "all" in names else tuple(names)
    if args.epsilon:
        changes["epsilon_values"] = parse_int_list(args.epsilon, "epsilon")
    if args.algebra:
        changes["algebras"] = tuple(n for item in args.algebra for n in parse_list(item))
    ints = {"index_box": args.index_box, "label_box": args.label_box,
            "generator_box": args.generator_box, "degree_cap": args.degree_cap,
            "vector_samples": args.samples, "truncation_order": args.order,
            "rng_seed": args.seed}
    for name, raw in ints.items():
        if raw is not None:
            changes[name] = parse_int(raw, name)
    if args.charges:
        changes["charges"] = parse_int_list(args.charges, "charges")
    if args.report:
        changes["report_format"] = args.report
    if args.fault:
        changes["fault"] = True
    changes["parameter_points"] = override_points(
        cfg.parameter_points, _rationals(args.mu, "mu"), _rationals(args.ell, "ell"),
        _rationals(args.alpha, "alpha"), _rationals(args.beta, "beta"))
    return cfg.replace(**changes).validate()


def _write(data: bytes, path: Optional[str]) -> None:
    if path:
        with open(path, "wb") as fh:
            fh.write(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(args)
    except ConfigError as exc:
        for field_name, message in exc.problems:
            print(f"config error: {field_name}: {message}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        report = run_suites(cfg)
    except SuiteAbort as exc:
        _write(emit_report(exc.report, cfg.report_format, args.timing), args.output)
        print(f"aborted: {exc}", file=sys.stderr)
        return EXIT_FAIL
    _write(emit_report(report, cfg.report_format, args.timing), args.output)
    return EXIT_OK if report.ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
