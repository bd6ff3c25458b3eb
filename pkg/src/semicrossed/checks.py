"""Small pass/fail report containers shared by validators and the harness."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class CheckItem:
    name: str
    passed: bool
    detail: str = ""

    def to_dict(self) -> dict:
        d = {"name": self.name, "pass": self.passed}
        if self.detail:
            d["detail"] = self.detail
        return d


@dataclass
class CheckReport:
    title: str = ""
    items: list[CheckItem] = field(default_factory=list)

    def add(self, name: str, passed: bool, detail: str = "") -> None:
        self.items.append(CheckItem(name, passed, detail))

    @property
    def ok(self) -> bool:
        return all(item.passed for item in self.items)

    def failures(self) -> list[CheckItem]:
        return [item for item in self.items if not item.passed]

    def to_dict(self) -> dict:
        return {
            "title": self.title,
            "pass": self.ok,
            "checks": [item.to_dict() for item in self.items],
        }

    def render_text(self) -> str:
        lines = [f"report: {self.title}" if self.title else "report:"]
        for item in self.items:
            status = "ok" if item.passed else "FAIL"
            suffix = f"  ({item.detail})" if item.detail else ""
            lines.append(f"  [{status}] {item.name}{suffix}")
        lines.append(f"result: {'pass' if self.ok else 'fail'}")
        return "\n".join(lines)
