import json
from fractions import Fraction

from toroidal.algebra import KForm, element
from toroidal.report import SCHEMA, CheckReport, emit_report


def test_empty_report():
    r = CheckReport()
    assert r.ok
    assert emit_report(r) == b"total: 0/0 passed, 0 failed\n"
    doc = json.loads(emit_report(r, "json"))
    assert doc == {"schema": SCHEMA, "summary": {"total": 0, "passed": 0, "failed": 0, "suites": {}},
                   "cases": []}


def test_failure_carries_an_exact_witness():
    r = CheckReport()
    r.add("jacobi", "b", {"eps": 2}, residual=None)
    r.add("jacobi", "a", {"eps": 2, "mu": Fraction(1, 3)}, residual=element({KForm(1, 2): Fraction(-3, 7)}))
    assert not r.ok
    [fail] = r.failures()
    assert fail.case == "a" and "-3/7" in fail.witness
    text = emit_report(r).decode()
    assert text.splitlines()[0] == "FAIL jacobi: 1/2 cases passed"
    assert "  FAIL jacobi a [eps=2 mu=1/3]" in text
    doc = json.loads(emit_report(r, "json"))
    assert [c["case"] for c in doc["cases"]] == ["a", "b"]
    assert doc["cases"][0]["params"] == {"eps": "2", "mu": "1/3"}


def test_dict_residuals_list_only_nonzero_parts():
    r = CheckReport()
    r.add("s", "c", {}, residual={"x": Fraction(0), "y": Fraction(1, 2)})
    assert r.failures()[0].witness == "y: 1/2"


def test_timing_is_opt_in_and_output_is_byte_stable():
    def build(t):
        r = CheckReport(wall_time=t)
        r.add("s", "z", {})
        r.add("r", "y", {"p": 1})
        return r

    assert emit_report(build(1.0)) == emit_report(build(9.5))
    assert emit_report(build(1.0), "json") == emit_report(build(9.5), "json")
    assert b"wall time: 1.500s" in emit_report(build(1.5), include_timing=True)
    assert json.loads(emit_report(build(1.5), "json", True))["wall_time"] == 1.5
