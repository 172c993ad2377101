"""Exception taxonomy shared by every module.

The CLI maps these onto exit codes: verification failure -> 1,
``SizeLimitError`` -> 2, ``DomainError`` (and bad usage) -> 3.
"""


class HurwitzError(Exception):
    """Base class for all package errors."""


class DomainError(HurwitzError, ValueError):
    """An argument violates an operation's precondition."""


class SizeLimitError(HurwitzError, ValueError):
    """A configured resource ceiling (degree, search space) was exceeded."""


class SingularParameterError(DomainError):
    """A deformation parameter hit a degenerate value (vanishing pivot)."""


class EmptyReportError(HurwitzError, ValueError):
    """A ratio sweep produced no rows (every exact value was zero)."""
