"""Exception hierarchy shared by every module of the toolkit."""


class GapkitError(Exception):
    """Base class for all toolkit errors."""


class CapExceeded(GapkitError):
    """An exact solver or a construction would exceed its configured size cap.

    ``size`` is the offending quantity (vertex count, family size, ...), and
    ``cap`` the limit in force, so callers can report the would-be size.
    """

    def __init__(self, what: str, size: int, cap: int, stage: str | None = None):
        self.what = what
        self.size = size
        self.cap = cap
        self.stage = stage
        prefix = f"[{stage}] " if stage else ""
        super().__init__(f"{prefix}{what}: {size} exceeds cap {cap}")


class DimacsParseError(GapkitError):
    """Malformed DIMACS input. ``line`` is 1-based."""

    def __init__(self, line: int, message: str):
        self.line = line
        super().__init__(f"line {line}: {message}")


class HeaderError(DimacsParseError):
    pass


class ArityError(DimacsParseError):
    pass


class VariableRangeError(DimacsParseError):
    pass


class TokenError(DimacsParseError):
    pass


class FormatError(GapkitError):
    """Malformed edge-list, set-system or JSON instance file."""


class InvalidInstance(GapkitError):
    """An instance violates a structural invariant (range, simplicity, ...)."""


class InfeasibleInstance(GapkitError):
    def __init__(self, uncovered: int):
        self.uncovered = uncovered
        super().__init__(f"element {uncovered} is not covered by any set")


class PartialAssignment(GapkitError):
    pass


class NotSatisfying(GapkitError):
    pass
