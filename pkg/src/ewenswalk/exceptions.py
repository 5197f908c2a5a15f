"""Exception types shared across the package."""


class EwensWalkError(Exception):
    """Base class for errors raised by this package."""


class SizeError(EwensWalkError, ValueError):
    """A problem size exceeds a configured cap or is out of range."""


class DomainError(EwensWalkError, ValueError):
    """Arguments are individually valid but incompatible (e.g. partitions of different sizes)."""


class InvariantError(EwensWalkError, AssertionError):
    """A mathematical invariant failed to hold on computed data."""
