"""Verification report model."""

from dataclasses import dataclass, field
from typing import Any, Optional


@dataclass(frozen=True)
class Diagnostic:
    """One verification finding."""

    check: str
    message: str
    layer: int = -1
    qubit: Optional[str] = None

    def __str__(self) -> str:
        where = []
        if self.layer >= 0:
            where.append(f"layer {self.layer + 1}")
        if self.qubit:
            where.append(self.qubit)
        prefix = f"[{self.check}]" + (f" {', '.join(where)}:" if where else "")
        return f"{prefix} {self.message}"


@dataclass
class CommutationResult:
    """Even-overlap verdict with the offending check pairs."""

    ok: bool
    pairs_checked: int = 0
    odd_pairs: list[tuple[str, str, int]] = field(default_factory=list)


@dataclass
class VerificationReport:
    """Outcome of the full verification suite for one schedule."""

    scheme: str
    code: str
    structural_ok: bool = True
    coverage_ok: bool = True
    commutation_ok: bool = True
    syndromes_deterministic: bool = True
    single_fault_detection_ok: bool = True
    logicals_preserved: bool = True
    restoration_ok: bool = True
    diagnostics: list[Diagnostic] = field(default_factory=list)
    counts: dict[str, int] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(
            (
                self.structural_ok,
                self.coverage_ok,
                self.commutation_ok,
                self.syndromes_deterministic,
                self.single_fault_detection_ok,
                self.logicals_preserved,
                self.restoration_ok,
            )
        )

    def add(
        self,
        check: str,
        message: str,
        layer: int = -1,
        qubit: Optional[str] = None,
    ) -> None:
        self.diagnostics.append(Diagnostic(check, message, layer, qubit))

    def failure_messages(self) -> list[str]:
        """Human-readable failures, earliest layer first."""
        ordered = sorted(
            self.diagnostics,
            key=lambda d: (d.layer if d.layer >= 0 else 10**9, d.check),
        )
        return [str(d) for d in ordered]

    def flags(self) -> dict[str, bool]:
        return {
            "structural_ok": self.structural_ok,
            "coverage_ok": self.coverage_ok,
            "commutation_ok": self.commutation_ok,
            "syndromes_deterministic": self.syndromes_deterministic,
            "single_fault_detection_ok": self.single_fault_detection_ok,
            "logicals_preserved": self.logicals_preserved,
            "restoration_ok": self.restoration_ok,
        }

    def to_dict(self) -> dict[str, Any]:
        """Stable document used by the JSON report."""
        return {
            "code": self.code,
            "scheme": self.scheme,
            "passed": self.passed,
            **self.flags(),
            "counts": dict(self.counts),
            "diagnostics": [
                {
                    "check": d.check,
                    "message": d.message,
                    "layer": d.layer + 1 if d.layer >= 0 else None,
                    "qubit": d.qubit,
                }
                for d in self.diagnostics
            ],
        }
