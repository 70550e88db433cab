"""Exception hierarchy shared across the package.

PreconditionError maps to CLI exit code 2 (bad input / out of range),
ConsistencyError to exit code 3 (an internal cross-check failed, which
indicates a math bug rather than bad input).
"""


class HermagError(Exception):
    """Base class for all package errors."""


class PreconditionError(HermagError, ValueError):
    """An operation was called outside its documented domain."""


class ConsistencyError(HermagError, RuntimeError):
    """An internal invariant (dimension count, residual, ...) failed."""


class ConwayTableError(HermagError, ValueError):
    """A Conway table file is malformed or an entry failed verification."""


class GuardError(PreconditionError):
    """A size/cost guard was exceeded."""
