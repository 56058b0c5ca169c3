"""Check reports with JSON-ready witnesses."""

from __future__ import annotations

from dataclasses import dataclass, field


def to_jsonable(obj):
    if hasattr(obj, "to_json"):
        return obj.to_json()
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    return obj


@dataclass
class CheckReport:
    name: str
    cutoff: int
    checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, detail: str, **elements) -> None:
        self.failures.append({"detail": detail, **{k: to_jsonable(v) for k, v in elements.items()}})

    def require(self, cond: bool, detail: str, **elements) -> None:
        self.checked += 1
        if not cond:
            self.fail(detail, **elements)

    def to_json(self) -> dict:
        return {
            "check": self.name,
            "cutoff": self.cutoff,
            "checked": self.checked,
            "status": "pass" if self.passed else "fail",
            "failures": self.failures[:20],
            "failureCount": len(self.failures),
        }
