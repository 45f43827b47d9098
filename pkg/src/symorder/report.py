from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List


def _plain(value):
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (bool, int, float, str)) or value is None:
        return value
    return str(value)


@dataclass
class Report:
    """Outcome of an exact check: verdict, summary fields and failure records."""

    name: str
    passed: bool
    details: Dict[str, Any] = field(default_factory=dict)
    failures: List[Dict[str, Any]] = field(default_factory=list)

    def __bool__(self):
        return self.passed

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extras = " ".join(f"{k}={_plain(v)}" for k, v in self.details.items())
        return f"{status} {self.name}" + (f"  {extras}" if extras else "")

    def to_record(self) -> Dict[str, Any]:
        return {"check": self.name, "passed": self.passed,
                "details": _plain(self.details), "failures": _plain(self.failures)}

    def to_json(self) -> str:
        return json.dumps(self.to_record(), sort_keys=True)

    @staticmethod
    def combine(name: str, reports: List["Report"], **details) -> "Report":
        failures = []
        for r in reports:
            if not r.passed:
                failures.append({"check": r.name, **_plain(r.details),
                                 "failures": _plain(r.failures[:5])})
        details = {"checks": len(reports), **details}
        return Report(name, not failures, details, failures)
