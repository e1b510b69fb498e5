"""Findings collected by the law checkers."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass(frozen=True)
class Finding:
    law: str
    witness: str
    structural: bool = False

    def to_json(self) -> dict:
        return {"law": self.law, "witness": self.witness, "structural": self.structural}


@dataclass
class CheckReport:
    """Accumulates violations found by a sweep.

    ``structural`` findings mean the input itself is malformed (dangling ids,
    wrong boundaries of given data); the rest are law violations.
    """

    name: str = ""
    findings: list[Finding] = field(default_factory=list)
    checked: int = 0
    truncated: bool = False
    meta: dict[str, Any] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.findings

    @property
    def errors(self) -> list[Finding]:
        return [f for f in self.findings if f.structural]

    @property
    def violations(self) -> list[Finding]:
        return [f for f in self.findings if not f.structural]

    def fail(self, law: str, witness: Any) -> None:
        self.findings.append(Finding(law, _render(witness)))

    def error(self, law: str, witness: Any) -> None:
        self.findings.append(Finding(law, _render(witness), structural=True))

    def expect(self, cond: bool, law: str, witness: Any) -> bool:
        self.checked += 1
        if not cond:
            self.fail(law, witness)
        return cond

    def merge(self, other: "CheckReport", prefix: str = "") -> "CheckReport":
        for f in other.findings:
            law = f"{prefix}{f.law}" if prefix else f.law
            self.findings.append(Finding(law, f.witness, f.structural))
        self.checked += other.checked
        self.truncated = self.truncated or other.truncated
        return self

    def laws(self) -> set[str]:
        return {f.law for f in self.findings}

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "ok": self.ok,
            "checked": self.checked,
            "truncated": self.truncated,
            "meta": self.meta,
            "findings": [f.to_json() for f in self.findings],
        }

    def __str__(self) -> str:
        head = f"{self.name or 'check'}: {'pass' if self.ok else 'FAIL'} ({self.checked} checks"
        head += ", truncated)" if self.truncated else ")"
        lines = [head] + [f"  [{f.law}] {f.witness}" for f in self.findings[:20]]
        if len(self.findings) > 20:
            lines.append(f"  ... {len(self.findings) - 20} more")
        return "\n".join(lines)


# the same record serves both purposes
ValidationReport = CheckReport
LawReport = CheckReport


class LawViolation(ValueError):
    """Raised when an input fails a precondition that is itself a law check."""

    def __init__(self, message: str, report: CheckReport | None = None):
        super().__init__(message)
        self.report = report


def _render(w: Any) -> str:
    if isinstance(w, str):
        return w
    return repr(w)
