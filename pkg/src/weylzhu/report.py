"""Check outcomes shared by the suites and the CLI."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List

MAX_WITNESSES = 20


@dataclass
class CheckResult:
    """Pass/fail tally of one named check; keeps the first few failure witnesses."""

    name: str
    passed: int = 0
    failed: int = 0
    failures: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failed

    def record(self, good: bool, witness: str) -> None:
        if good:
            self.passed += 1
            return
        self.failed += 1
        if len(self.failures) < MAX_WITNESSES:
            self.failures.append(witness)

    def as_dict(self) -> dict:
        return {"name": self.name, "ok": self.ok, "passed": self.passed,
                "failed": self.failed, "failures": list(self.failures)}

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        text = f"{status}  {self.name}  ({self.passed} passed, {self.failed} failed)"
        if self.failures:
            text += f"  first failure: {self.failures[0]}"
        return text
