"""Exception hierarchy shared by every module."""


class UnfoldingError(Exception):
    """Base class for all errors raised by the package."""


class ValidationError(UnfoldingError, ValueError):
    """An input violates a documented precondition."""


class NotAnEquilibrium(ValidationError):
    pass


class MalformedMachine(ValidationError):
    pass


class LimitExceeded(UnfoldingError, RuntimeError):
    """A materialization or enumeration cap would be exceeded."""
