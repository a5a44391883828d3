"""Exception hierarchy shared by all periodica modules."""


class PeriodicaError(Exception):
    """Base class for every error raised by this package."""


class DomainError(PeriodicaError, ValueError):
    """An argument lies outside the domain of the operation."""


class PreconditionError(DomainError):
    """An argument is in range but violates a stated precondition."""


class InvalidCorrelation(DomainError):
    """A bitvector is not the correlation of any pair of words."""


class InvariantViolation(PeriodicaError, RuntimeError):
    """A combinatorial guarantee failed; the input was invalid or there is a bug."""


class UnsupportedLength(PeriodicaError):
    """The requested length exceeds the configured enumeration ceiling."""


class CacheError(PeriodicaError):
    """A gamma cache file is missing, unreadable or malformed."""

    def __init__(self, path, reason):
        super().__init__(f"{path}: {reason}")
        self.path = path
        self.reason = reason
