"""Structured pass/fail/undetermined reports shared by every checker.

The dictionary form (``to_dict``) is the stable machine-readable schema:

    {"check": str, "verdict": "pass"|"fail"|"undetermined",
     "summary": str, "cases": [{"id", "verdict", "data"}...], "meta": {...}}
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Iterable

PASS = "pass"
FAIL = "fail"
UNDETERMINED = "undetermined"

_RANK = {PASS: 0, UNDETERMINED: 1, FAIL: 2}


def combine(verdicts: Iterable[str]) -> str:
    worst = PASS
    for v in verdicts:
        if _RANK[v] > _RANK[worst]:
            worst = v
    return worst


def verdict_of(flag) -> str:
    """Map True/False/None onto a verdict."""
    if flag is None:
        return UNDETERMINED
    return PASS if flag else FAIL


@dataclass
class Case:
    id: str
    verdict: str
    data: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.verdict not in _RANK:
            raise ValueError(f"bad verdict {self.verdict!r}")
        if self.verdict == FAIL and not self.data:
            raise ValueError(f"failing case {self.id!r} carries no counterexample data")

    def to_dict(self) -> dict:
        return {"id": self.id, "verdict": self.verdict, "data": _jsonable(self.data)}


@dataclass
class VerificationReport:
    check: str
    cases: list[Case] = field(default_factory=list)
    meta: dict = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    def add(self, case_id: str, verdict: str, **data) -> Case:
        c = Case(case_id, verdict, data)
        self.cases.append(c)
        return c

    @property
    def verdict(self) -> str:
        return combine(c.verdict for c in self.cases)

    @property
    def passed(self) -> bool:
        return self.verdict == PASS

    def failures(self) -> list[Case]:
        return [c for c in self.cases if c.verdict == FAIL]

    def case(self, case_id: str) -> Case:
        for c in self.cases:
            if c.id == case_id:
                return c
        raise KeyError(case_id)

    def summary(self) -> str:
        n = len(self.cases)
        nf = len(self.failures())
        nu = sum(1 for c in self.cases if c.verdict == UNDETERMINED)
        return f"{self.check}: {self.verdict.upper()} ({n} cases, {nf} failed, {nu} undetermined)"

    def to_dict(self) -> dict:
        return {
            "check": self.check,
            "verdict": self.verdict,
            "summary": self.summary(),
            "cases": [c.to_dict() for c in sorted(self.cases, key=lambda c: c.id)],
            "meta": _jsonable(self.meta),
            "notes": list(self.notes),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    def render_text(self, max_cases: int = 20) -> str:
        lines = [self.summary()]
        for note in self.notes:
            lines.append(f"  note: {note}")
        shown = [c for c in self.cases if c.verdict != PASS] or self.cases
        for c in shown[:max_cases]:
            lines.append(f"  [{c.verdict}] {c.id}")
            for k in sorted(c.data):
                lines.append(f"      {k}: {_short(c.data[k])}")
        if len(shown) > max_cases:
            lines.append(f"  ... {len(shown) - max_cases} more")
        return "\n".join(lines)


def _short(x, limit: int = 160) -> str:
    s = json.dumps(_jsonable(x), sort_keys=True)
    return s if len(s) <= limit else s[: limit - 3] + "..."


def _jsonable(x: Any):
    from fractions import Fraction

    from .linalg.fields import CycloElement
    from .linalg.intmat import IntMatrix
    from .linalg.matrix import ExactMatrix

    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (bool, int, float, str)) or x is None:
        return x
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, CycloElement):
        return x.field.to_json(x)
    if isinstance(x, ExactMatrix):
        return x.to_json()
    if isinstance(x, IntMatrix):
        return x.to_json()
    if hasattr(x, "to_json"):
        return x.to_json()
    return repr(x)
