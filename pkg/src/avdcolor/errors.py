"""Exception types raised across the package."""

from __future__ import annotations


class AvdError(Exception):
    """Base class for every error this package raises on purpose."""

    code = "AvdError"


class LoopRejected(AvdError, ValueError):
    code = "LoopRejected"


class MultiplicityExceeded(AvdError, ValueError):
    code = "MultiplicityExceeded"


class IndexOutOfRange(AvdError, ValueError):
    code = "IndexOutOfRange"


class ParseError(AvdError, ValueError):
    code = "ParseError"

    def __init__(self, line: int, reason: str):
        super().__init__(f"line {line}: {reason}")
        self.line = line
        self.reason = reason


class NotTotal(AvdError, ValueError):
    code = "NotTotal"


class NotProper(AvdError, ValueError):
    code = "NotProper"


class EdgeAlreadyColored(AvdError, ValueError):
    code = "EdgeAlreadyColored"


class PaletteTooSmall(AvdError, ValueError):
    code = "PaletteTooSmall"


class IsolatedEdgePresent(AvdError, ValueError):
    code = "IsolatedEdgePresent"


class BudgetExhausted(AvdError, RuntimeError):
    """The search stopped on its node budget; the answer is unknown."""

    code = "BudgetExhausted"


class TooLarge(AvdError, ValueError):
    code = "TooLarge"


class DomainError(AvdError, ValueError):
    code = "DomainError"


class InfeasibleFamily(AvdError, ValueError):
    code = "InfeasibleFamily"


class NoAvailableColor(AvdError, RuntimeError):
    code = "NoAvailableColor"


# Raised inside the pipeline when a desk-scale run hits a situation the
# asymptotic argument excludes. The pipeline catches these and falls back.
class InsufficientEligibleEdges(AvdError, RuntimeError):
    code = "InsufficientEligibleEdges"


class ListInfeasible(AvdError, RuntimeError):
    code = "ListInfeasible"


class RepairStalled(AvdError, RuntimeError):
    code = "RepairStalled"


class ResampleBudgetExceeded(AvdError, RuntimeError):
    code = "ResampleBudgetExceeded"
