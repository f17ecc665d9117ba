"""Exceptions raised by branchmin."""


class BranchminError(Exception):
    """Base class for all errors reported to callers."""


class AutParseError(BranchminError):
    """Malformed Aldébaran input."""

    def __init__(self, message: str, line_number: int):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


class UnknownLabelError(BranchminError):
    """A label name that is not in the action table."""


class LabelConflictError(BranchminError):
    """Two action tables disagree on whether a label is internal."""


class InvariantViolation(BranchminError):
    """The debug validator found the engine in an inconsistent state."""

    def __init__(self, where: str, violations: list[str]):
        summary = "; ".join(violations[:5])
        if len(violations) > 5:
            summary += f" (+{len(violations) - 5} more)"
        super().__init__(f"{where}: {summary}")
        self.where = where
        self.violations = violations
