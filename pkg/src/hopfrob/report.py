"""Structured pass/fail reporting shared by verifiers and the CLI."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class CheckItem:
    name: str
    ok: bool
    detail: str = ""


@dataclass
class Report:
    title: str
    items: list[CheckItem] = field(default_factory=list)

    def add(self, name: str, ok: bool, detail: str = "") -> bool:
        self.items.append(CheckItem(name, bool(ok), detail))
        return bool(ok)

    @property
    def passed(self) -> bool:
        return all(it.ok for it in self.items)

    def failures(self) -> list[CheckItem]:
        return [it for it in self.items if not it.ok]

    def summary_lines(self) -> list[str]:
        lines = [f"{self.title}: {'PASS' if self.passed else 'FAIL'}"]
        for it in self.items:
            mark = "PASS" if it.ok else "FAIL"
            detail = f"  ({it.detail})" if it.detail else ""
            lines.append(f"  [{mark}] {it.name}{detail}")
        return lines

    def __str__(self) -> str:
        return "\n".join(self.summary_lines())
