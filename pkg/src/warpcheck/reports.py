"""Structured check results shared by the suites and the CLI."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

PASS = "PASS"
FAIL = "FAIL"
SKIPPED = "SKIPPED"
FINDING = "FINDING"  # reported measurement, not asserted
HYPOTHESIS_FAILED = "HYPOTHESIS-FAILED"
ERROR = "FAILED-WITH-ERROR"

# statuses that do not break a run
_SOFT = {PASS, SKIPPED, FINDING}


@dataclass
class CheckResult:
    name: str
    max_residual: float | None
    tolerance: float | None
    status: str

    @classmethod
    def compare(cls, name: str, residual: float, tolerance: float, *, soft: bool = False):
        ok = residual <= tolerance
        status = PASS if ok else (FINDING if soft else FAIL)
        return cls(name, float(residual), float(tolerance), status)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "max_residual": self.max_residual,
            "tolerance": self.tolerance,
            "status": self.status,
        }


@dataclass
class SuiteReport:
    suite: str
    checks: list[CheckResult] = field(default_factory=list)
    provenance: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.status in _SOFT for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "checks": [c.to_dict() for c in self.checks],
            "provenance": self.provenance,
        }


@dataclass
class ReportFile:
    scenario: str
    suites: list[SuiteReport]
    engine_version: str
    schema_version: int = 1

    @property
    def passed(self) -> bool:
        return all(s.passed for s in self.suites)

    def to_dict(self) -> dict:
        return {
            "schema_version": self.schema_version,
            "scenario": self.scenario,
            "engine_version": self.engine_version,
            "suites": [s.to_dict() for s in self.suites],
            "pass": self.passed,
        }

    def to_json(self) -> str:
        # sorted keys and fixed separators so identical runs are byte-identical
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"
