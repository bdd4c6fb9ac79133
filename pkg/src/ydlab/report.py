"""Verification reports: a named list of checks with counterexamples."""

from __future__ import annotations

import json
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Any

from .exactmat import LinMap, first_difference, format_scalar


@dataclass
class Check:
    label: str
    passed: bool
    counterexample: dict[str, Any] | None = None

    def to_dict(self) -> dict[str, Any]:
        return {"label": self.label, "passed": self.passed, "counterexample": self.counterexample}


@dataclass
class VerificationReport:
    subject: str
    checks: list[Check] = field(default_factory=list)
    seed: int | None = None
    elapsed_ms: float = 0.0
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failed_labels(self) -> list[str]:
        return [c.label for c in self.checks if not c.passed]

    def __getitem__(self, label: str) -> Check:
        for c in self.checks:
            if c.label == label:
                return c
        raise KeyError(label)

    def labels(self) -> list[str]:
        return [c.label for c in self.checks]

    def add(self, label: str, passed: bool, counterexample: dict[str, Any] | None = None) -> Check:
        if passed:
            counterexample = None
        elif counterexample is None:
            counterexample = {}
        check = Check(label, bool(passed), counterexample)
        self.checks.append(check)
        return check

    def add_equal(self, label: str, lhs: LinMap, rhs: LinMap) -> Check:
        """Record whether two maps agree; a failure carries the first differing entry."""
        diff = first_difference(lhs, rhs)
        if diff is None:
            return self.add(label, True)
        i, j, a, b = diff
        return self.add(label, False, {
            "row": i, "col": j, "flat": i * lhs.dom_dim + j,
            "lhs": format_scalar(a), "rhs": format_scalar(b),
        })

    def extend(self, other: VerificationReport, prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(Check(prefix + c.label, c.passed, c.counterexample))
        self.notes.extend(other.notes)

    @contextmanager
    def timed(self):
        start = time.perf_counter()
        try:
            yield self
        finally:
            self.elapsed_ms = (time.perf_counter() - start) * 1000.0

    def to_dict(self) -> dict[str, Any]:
        return {
            "subject": self.subject,
            "passed": self.passed,
            "checks": [c.to_dict() for c in self.checks],
            "seed": self.seed,
            "elapsed_ms": round(self.elapsed_ms, 3),
            "notes": list(self.notes),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> VerificationReport:
        checks = [Check(c["label"], c["passed"], c.get("counterexample")) for c in data["checks"]]
        return cls(data["subject"], checks, data.get("seed"), data.get("elapsed_ms", 0.0),
                   list(data.get("notes", [])))

    def render(self) -> str:
        lines = [f"{self.subject}: {'PASS' if self.passed else 'FAIL'} ({self.elapsed_ms:.1f} ms)"]
        for c in self.checks:
            line = f"  [{'ok' if c.passed else 'FAIL'}] {c.label}"
            if c.counterexample:
                ce = ", ".join(f"{k}={v}" for k, v in c.counterexample.items())
                line += f"  ({ce})"
            lines.append(line)
        if self.seed is not None:
            lines.append(f"  seed: {self.seed}")
        for n in self.notes:
            lines.append(f"  note: {n}")
        return "\n".join(lines)
