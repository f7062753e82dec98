"""
Verdict Records
Per-condition pass/fail results shared by every checker
"""
from dataclasses import dataclass, field
from typing import List, Optional


@dataclass(frozen=True)
class Verdict:
    condition: str
    passed: bool
    witness: Optional[str] = None

    def __str__(self):
        mark = '✓' if self.passed else '✗'
        text = f'{mark} {self.condition}'
        if self.witness:
            text += f' ({self.witness})'
        return text


@dataclass
class VerdictReport:
    """Ordered list of verdicts plus free-form notes"""
    title: str
    verdicts: List[Verdict] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)

    def add(self, condition: str, passed: bool, witness: Optional[str] = None) -> bool:
        self.verdicts.append(Verdict(condition, bool(passed), witness))
        return bool(passed)

    @property
    def passed(self) -> bool:
        return all(v.passed for v in self.verdicts)

    def failures(self) -> List[Verdict]:
        return [v for v in self.verdicts if not v.passed]

    def __bool__(self):
        return self.passed
