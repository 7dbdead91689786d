"""Exception hierarchy shared by all zerosum modules."""


class ZeroSumError(ValueError):
    """Base class for every error raised by this package."""


class InvalidElementError(ZeroSumError):
    pass


class GroupSpecError(ZeroSumError):
    pass


class UnsupportedGroupError(ZeroSumError):
    pass


class NotInKernelError(ZeroSumError):
    pass


class NotContainedError(ZeroSumError):
    pass


class ParseError(ZeroSumError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class BudgetExceeded(ZeroSumError):
    """A computation would exceed its configured resource bound."""

    def __init__(self, what: str, needed: int, limit: int):
        self.what = what
        self.needed = needed
        self.limit = limit
        super().__init__(f"{what}: needs {needed} cells, budget is {limit}")


class DomainError(ZeroSumError):
    """Parameters outside the range where an operation is defined."""


class PreconditionError(ZeroSumError):
    pass


class InvariantViolation(RuntimeError):
    """Something that is guaranteed mathematically did not happen; indicates a bug."""
