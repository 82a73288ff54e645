"""Exception hierarchy for louvre."""

from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from .models.verification import VerificationReport


class LouvreError(Exception):
    """Base class for every louvre failure."""


class CodeParseError(LouvreError, ValueError):
    """A polynomial or code file could not be parsed."""


class TableParseError(LouvreError, ValueError):
    """An instruction table could not be parsed."""


class ScheduleError(LouvreError, ValueError):
    """A schedule cannot be built from the given choices."""


class StructuralError(LouvreError):
    """A schedule is physically inconsistent with the qubit configuration."""

    def __init__(self, message: str, layer: int = -1) -> None:
        """Store the failing layer index alongside the message."""
        super().__init__(message)
        self.layer = layer


class AbsentSiteError(LouvreError, ValueError):
    """An absent site cannot be accommodated."""


class OrderingError(LouvreError):
    """The ordering search found no feasible schedule."""


class RoutingError(LouvreError):
    """A coupler could not be routed."""


class VerificationFailedError(LouvreError):
    """A schedule failed verification."""

    def __init__(self, report: "VerificationReport") -> None:
        """Keep the failing report for diagnostics."""
        super().__init__("; ".join(report.failure_messages()) or "verification failed")
        self.report = report


class CircuitEmissionError(LouvreError, ValueError):
    """A circuit cannot be emitted with the requested parameters."""
