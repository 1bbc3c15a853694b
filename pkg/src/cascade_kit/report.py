from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

SCHEMA_VERSION = 1


def jsonable(obj: Any) -> Any:
    """Convert tuples, sets, Fractions into JSON-friendly values (deterministic)."""
    if isinstance(obj, Fraction):
        return obj.numerator if obj.denominator == 1 else f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, dict):
        return {str(k) if not isinstance(k, str) else k: jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (set, frozenset)):
        return sorted(jsonable(x) for x in obj)
    if isinstance(obj, (list, tuple)):
        return [jsonable(x) for x in obj]
    return obj


@dataclass
class CheckResult:
    check: str
    status: str  # "pass" | "fail"
    witness: Any = None
    evidence: str = "exact"  # or "property-based evidence" / "observed"
    info: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status == "pass"


@dataclass
class VerificationReport:
    suite: str
    type: str
    seed: int | None = None
    samples: int | None = None
    checks: list[CheckResult] = field(default_factory=list)

    def add(self, check: str, ok: bool, witness: Any = None, evidence: str = "exact",
            **info) -> CheckResult:
        res = CheckResult(check, "pass" if ok else "fail", None if ok else witness, evidence, info)
        self.checks.append(res)
        return res

    def extend(self, other: "VerificationReport") -> None:
        self.checks.extend(other.checks)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def __getitem__(self, name: str) -> CheckResult:
        for c in self.checks:
            if c.check == name:
                return c
        raise KeyError(name)

    def records(self) -> list[dict]:
        out = []
        for c in self.checks:
            rec = {"check": f"{self.suite}.{c.check}", "type": self.type, "seed": self.seed,
                   "samples": self.samples, "status": c.status, "evidence": c.evidence}
            if c.info:
                rec["info"] = jsonable(c.info)
            if c.witness is not None:
                rec["witness"] = jsonable(c.witness)
            out.append(rec)
        return out

    def to_json(self) -> str:
        return json.dumps(self.records(), sort_keys=True, indent=2)

    def summary(self) -> str:
        lines = [f"[{self.suite}] {self.type}"]
        for c in self.checks:
            lines.append(f"  {c.status.upper():4s} {c.check}" +
                         ("" if c.evidence == "exact" else f"  ({c.evidence})"))
        return "\n".join(lines)
