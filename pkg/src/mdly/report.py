from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .multilinear import Multilinear

MAX_LISTED = 10


@dataclass(frozen=True)
class Violation:
    axiom: str
    witness: tuple  # 0-based basis indices, in the argument order of the identity
    residual: tuple  # dense vector of Fractions

    def describe(self, one_based: bool = True) -> str:
        w = tuple(i + 1 for i in self.witness) if one_based else self.witness
        res = ", ".join(str(x) for x in self.residual)
        return f"{self.axiom} fails at {w}: residual ({res})"


@dataclass
class Report:
    """Outcome of an identity check.

    Only the first ``MAX_LISTED`` violations are kept (identity order, then
    lexicographic witness order); ``counts`` holds the per-identity totals.
    """

    subject: str = ""
    violations: list[Violation] = field(default_factory=list)
    counts: dict[str, int] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not any(self.counts.values())

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def __bool__(self) -> bool:
        # truthy when there is something to report
        return not self.ok

    def failed(self) -> list[str]:
        return [name for name, n in self.counts.items() if n]

    def add_residual(self, axiom: str, residual: Multilinear, out_dim: int) -> None:
        keys = sorted(residual.data)
        self.counts[axiom] = self.counts.get(axiom, 0) + len(keys)
        for key in keys:
            if len(self.violations) >= MAX_LISTED:
                break
            vec = residual.data[key]
            self.violations.append(Violation(
                axiom, key, tuple(Fraction(vec.get(i, 0)) for i in range(out_dim))))

    def add_violation(self, axiom: str, witness: tuple, residual: tuple) -> None:
        self.counts[axiom] = self.counts.get(axiom, 0) + 1
        if len(self.violations) < MAX_LISTED:
            self.violations.append(Violation(axiom, tuple(witness), tuple(residual)))

    def merge(self, other: "Report", prefix: str = "") -> None:
        for name, n in other.counts.items():
            key = prefix + name
            self.counts[key] = self.counts.get(key, 0) + n
        for v in other.violations:
            if len(self.violations) >= MAX_LISTED:
                break
            self.violations.append(Violation(prefix + v.axiom, v.witness, v.residual))

    def summary(self) -> str:
        head = self.subject or "check"
        if self.ok:
            return f"{head}: ok"
        lines = [f"{head}: {self.total} violation(s) in {', '.join(self.failed())}"]
        lines += ["  " + v.describe() for v in self.violations]
        shown = len(self.violations)
        if self.total > shown:
            lines.append(f"  ... and {self.total - shown} more")
        return "\n".join(lines)

    def to_dict(self) -> dict:
        return {
            "subject": self.subject,
            "ok": self.ok,
            "total": self.total,
            "counts": dict(self.counts),
            "violations": [
                {"axiom": v.axiom, "witness": [i + 1 for i in v.witness],
                 "residual": [str(x) for x in v.residual]}
                for v in self.violations
            ],
        }
