"""Exception hierarchy.

Every error raised on bad input derives from :class:`DomainError`, which is a
``ValueError`` so callers that only care about "bad argument" can catch that.
"""


class DomainError(ValueError):
    """An argument lies outside the domain of the operation."""


class ZeroDatumError(DomainError):
    pass


class NonFiniteError(DomainError):
    pass


class ZeroBaseError(DomainError):
    pass


class SampleTooSmallError(DomainError):
    pass


class PowerOutOfRangeError(DomainError):
    pass


class DegreeTooSmallError(DomainError):
    pass


class QuantileDomainError(DomainError):
    pass


class AlphaDomainError(DomainError):
    pass


class NoConvergenceError(RuntimeError):
    """Numerical routine exhausted its evaluation budget."""
