"""Itemized pass/fail reports shared by every checker."""
from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Check:
    name: str
    ok: bool
    witness: object = None
    skipped: bool = False


@dataclass
class Report:
    title: str
    checks: list = field(default_factory=list)
    data: dict = field(default_factory=dict)

    def add(self, name: str, ok: bool, witness=None) -> bool:
        self.checks.append(Check(name, bool(ok), witness))
        return bool(ok)

    def skip(self, name: str, reason: str):
        self.checks.append(Check(name, True, reason, skipped=True))

    def extend(self, other: "Report", prefix: str = ""):
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.ok, c.witness, c.skipped))

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def __bool__(self):
        return self.ok

    def failures(self) -> list:
        return [c for c in self.checks if not c.ok]

    def failed_names(self) -> list:
        return [c.name for c in self.checks if not c.ok]

    def to_json(self) -> dict:
        out = {"title": self.title, "ok": self.ok,
               "checks": [{"name": c.name, "ok": c.ok,
                           **({"witness": c.witness} if c.witness is not None else {}),
                           **({"skipped": True} if c.skipped else {})}
                          for c in self.checks]}
        if self.data:
            out["data"] = self.data
        return out

    def __str__(self):
        lines = [f"{self.title}: {'PASS' if self.ok else 'FAIL'}"]
        for c in self.checks:
            tag = "skip" if c.skipped else ("ok" if c.ok else "FAIL")
            w = f"  [{c.witness}]" if (c.witness is not None and not c.ok) else ""
            lines.append(f"  {tag:4} {c.name}{w}")
        return "\n".join(lines)
