"""Structured results of identity checks and their canonical serialization.

JSON schema (stable, keys sorted)::

    {
      "schema": "toroidal-check-report/1",
      "summary": {"total": int, "passed": int, "failed": int,
                  "suites": {suite: {"total": int, "passed": int, "failed": int}}},
      "cases": [{"suite": str, "case": str, "params": {str: str},
                 "passed": bool, "witness": str | null}, ...]
    }

Cases are sorted by (suite, case id).  Wall time is kept on the report but is
emitted only when asked for, so that identical configurations produce
byte-identical documents.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Dict, List, Optional

SCHEMA = "toroidal-check-report/1"


@dataclass(frozen=True)
class CaseResult:
    suite: str
    case: str
    params: Dict[str, str]
    passed: bool
    witness: Optional[str] = None

    def sort_key(self):
        return (self.suite, self.case)


@dataclass
class CheckReport:
    cases: List[CaseResult] = field(default_factory=list)
    wall_time: float = 0.0

    def add(self, suite: str, case: str, params: Dict[str, object], residual=None,
            passed: Optional[bool] = None, witness: Optional[str] = None) -> CaseResult:
        """Record one case; a falsy ``residual`` passes, anything else is the witness."""
        if passed is None:
            passed = not residual
        if not passed and witness is None:
            witness = _witness_text(residual)
        res = CaseResult(suite, case, {k: str(v) for k, v in params.items()}, passed,
                         None if passed else witness)
        self.cases.append(res)
        return res

    def extend(self, other: "CheckReport") -> None:
        self.cases.extend(other.cases)
        self.wall_time += other.wall_time

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.cases)

    def failures(self) -> List[CaseResult]:
        return [c for c in self.sorted_cases() if not c.passed]

    def sorted_cases(self) -> List[CaseResult]:
        return sorted(self.cases, key=CaseResult.sort_key)

    def summary(self) -> dict:
        suites: Dict[str, Dict[str, int]] = {}
        for c in self.cases:
            s = suites.setdefault(c.suite, {"total": 0, "passed": 0, "failed": 0})
            s["total"] += 1
            s["passed" if c.passed else "failed"] += 1
        passed = sum(1 for c in self.cases if c.passed)
        return {"total": len(self.cases), "passed": passed,
                "failed": len(self.cases) - passed, "suites": dict(sorted(suites.items()))}


def _witness_text(residual) -> str:
    if residual is None:
        return "failed"
    to_text = getattr(residual, "to_text", None)
    if to_text is not None:
        return to_text()
    if isinstance(residual, dict):
        return "; ".join(f"{k}: {_witness_text(v)}" for k, v in sorted(residual.items()) if v)
    return str(residual)


def emit_report(report: CheckReport, fmt: str = "text", include_timing: bool = False) -> bytes:
    """Canonical text or JSON rendering of a report."""
    summary = report.summary()
    if fmt == "json":
        doc = {
            "schema": SCHEMA,
            "summary": summary,
            "cases": [{"suite": c.suite, "case": c.case, "params": dict(sorted(c.params.items())),
                       "passed": c.passed, "witness": c.witness} for c in report.sorted_cases()],
        }
        if include_timing:
            doc["wall_time"] = round(report.wall_time, 3)
        return (json.dumps(doc, sort_keys=True, indent=2) + "\n").encode("utf-8")
    if fmt != "text":
        raise ValueError(f"unknown report format {fmt!r}")
    lines = []
    for suite, s in summary["suites"].items():
        status = "PASS" if not s["failed"] else "FAIL"
        lines.append(f"{status} {suite}: {s['passed']}/{s['total']} cases passed")
    for c in report.failures():
        params = " ".join(f"{k}={v}" for k, v in sorted(c.params.items()))
        lines.append(f"  FAIL {c.suite} {c.case} [{params}]")
        lines.append(f"    residual: {c.witness}")
    lines.append(f"total: {summary['passed']}/{summary['total']} passed, {summary['failed']} failed")
    if include_timing:
        lines.append(f"wall time: {report.wall_time:.3f}s")
    return ("\n".join(lines) + "\n").encode("utf-8")
