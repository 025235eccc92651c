import json
from fractions import Fraction

import pytest

from toroidal.verify import suites as suites_mod
from toroidal.verify.cli import main
from toroidal.verify.config import (SUITE_NAMES, ConfigError, SuiteConfig, config_from_mapping,
                                    load_config, override_points, parse_int_list, parse_points,
                                    parse_rational)
from toroidal.verify.suites import SuiteAbort, run_suites

F = Fraction
SMALL = dict(epsilon_values=(0, 2), algebras=("abelian",), index_box=1, label_box=1,
             degree_cap=1, vector_samples=2, charges=(0,), truncation_order=4, p_max=3,
             parameter_points=((F(1, 3), F(2), F(1, 5), F(7)),))


# -- configuration ------------------------------------------------------------------

def test_defaults_validate():
    cfg = SuiteConfig().validate()
    assert cfg.suites == SUITE_NAMES
    assert cfg.mu_values() == (0, F(1, 3))


def test_parsers():
    assert parse_rational(" -3/6 ", "x") == F(-1, 2)
    for bad in ("0.5", "1e3", "", "1/0", "abc"):
        with pytest.raises(ConfigError):
            parse_rational(bad, "x")
    assert parse_int_list("-2..1, 5", "eps") == (-2, -1, 0, 1, 5)
    assert parse_points("0 1 0 0; 1/3 2 1/5 7") == ((0, 1, 0, 0), (F(1, 3), 2, F(1, 5), 7))
    with pytest.raises(ConfigError):
        parse_points("1 2 3")


def test_validation_collects_field_diagnostics():
    cfg = SuiteConfig(suites=("jacobi", "nope"), parameter_points=((F(0), F(0), F(0), F(0)),),
                      algebras=("e8",), index_box=-1, report_format="xml")
    with pytest.raises(ConfigError) as info:
        cfg.validate()
    fields = [f for f, _ in info.value.problems]
    assert fields == ["suites", "points[0].ell", "algebras", "index_box", "report"]


def test_mapping_and_file(tmp_path):
    cfg = config_from_mapping({"suites": "phi, hcoeffs", "epsilon": "-1..1", "order": "5",
                               "fault": "yes", "points": "1/2 3 0 0"})
    assert cfg.suites == ("phi", "hcoeffs") and cfg.epsilon_values == (-1, 0, 1)
    assert cfg.truncation_order == 5 and cfg.fault
    with pytest.raises(ConfigError) as info:
        config_from_mapping({"colour": "red", "seed": "x"})
    assert sorted(f for f, _ in info.value.problems) == ["colour", "seed"]
    path = tmp_path / "v.ini"
    path.write_text("[verify]\nsuites = u1corr  # comment\nepsilon = 1, 2\n")
    assert load_config(path).epsilon_values == (1, 2)
    path.write_text("[other]\n")
    with pytest.raises(ConfigError):
        load_config(path)
    with pytest.raises(ConfigError):
        load_config(tmp_path / "missing.ini")


def test_override_points_is_a_product():
    base = ((F(0), F(1), F(0), F(0)),)
    assert override_points(base, None, None, None, None) == base
    pts = override_points(base, [F(1), F(2)], None, None, [F(3)])
    assert pts == ((1, 1, 0, 3), (2, 1, 0, 3))


# -- suites ---------------------------------------------------------------------------

@pytest.mark.parametrize("name", SUITE_NAMES)
def test_each_suite_passes_and_its_fault_is_detected(name):
    cfg = SuiteConfig(suites=(name,), **SMALL)
    if name in ("jacobi", "prop23"):
        cfg = cfg.replace(parameter_points=((F(1, 3), F(1), F(0), F(0)),))
    if name == "form_eps1":
        cfg = cfg.replace(epsilon_values=(1,))
    good = run_suites(cfg)
    assert good.cases and good.ok, good.failures()[:1]
    bad = run_suites(cfg.replace(fault=True))
    assert not bad.ok


def test_runs_are_deterministic():
    cfg = SuiteConfig(suites=("fock_conditions", "realization"), **SMALL)
    from toroidal.report import emit_report
    assert emit_report(run_suites(cfg), "json") == emit_report(run_suites(cfg), "json")


def test_internal_error_aborts(monkeypatch):
    def broken(cfg, report):
        raise ArithmeticError("boom")

    monkeypatch.setitem(suites_mod.SUITES, "u1corr", broken)
    with pytest.raises(SuiteAbort) as info:
        run_suites(SuiteConfig(suites=("u1corr", "hcoeffs"), **SMALL))
    report = info.value.report
    assert [c.case for c in report.failures()] == ["aborted"]
    assert any(c.suite == "hcoeffs" for c in report.cases)


# -- command line ----------------------------------------------------------------------

def test_cli_pass_and_json(capsys):
    assert main(["--suite", "hcoeffs,u1corr", "--epsilon=-1..2", "--report", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["summary"]["failed"] == 0 and set(doc["summary"]["suites"]) == {"hcoeffs", "u1corr"}


def test_cli_fault_exits_one(capsys):
    assert main(["--suite", "newton", "--epsilon", "2", "--fault"]) == 1
    out = capsys.readouterr().out
    assert out.startswith("FAIL newton") and "residual:" in out


def test_cli_config_errors_exit_two(capsys):
    assert main(["--suite", "phi", "--ell", "0"]) == 2
    assert "config error: points[0].ell" in capsys.readouterr().err
    assert main(["--suite", "bogus"]) == 2
    assert main(["--mu", "0.5"]) == 2
    with pytest.raises(SystemExit) as info:
        main(["--report", "yaml"])
    assert info.value.code == 2


def test_cli_output_file_and_config(tmp_path, capsys):
    ini = tmp_path / "c.ini"
    ini.write_text("[verify]\nsuites = u1corr\nepsilon = 0..3\n")
    out = tmp_path / "r.txt"
    assert main(["--config", str(ini), "--output", str(out)]) == 0
    assert out.read_text() == "PASS u1corr: 12/12 cases passed\ntotal: 12/12 passed, 0 failed\n"
    assert capsys.readouterr().out == ""


def test_cli_abort_exits_one(monkeypatch, capsys):
    def broken(cfg, report):
        raise ArithmeticError("boom")

    monkeypatch.setitem(suites_mod.SUITES, "u1corr", broken)
    assert main(["--suite", "u1corr"]) == 1
    captured = capsys.readouterr()
    assert "aborted" in captured.err and "FAIL u1corr" in captured.out
