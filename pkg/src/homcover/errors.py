"""Exception types shared across the library."""


class HomcoverError(Exception):
    """Base class for all library errors."""


class InvalidSpec(HomcoverError):
    """Group spec string failed to parse or validate."""

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class InvalidPQ(InvalidSpec):
    """pq(p, q) requested with p not dividing q - 1, or p, q not prime."""


class NotAGroup(HomcoverError):
    """A multiplication table violates the group axioms."""


class OrderCapExceeded(HomcoverError):
    """Requested group is larger than the configured order cap."""


class ClosureCapExceeded(HomcoverError):
    """A subgroup closure grew past the configured element cap."""


class CoverTooLarge(ClosureCapExceeded):
    """Cover construction refused or aborted because of its size."""


class NotNormal(HomcoverError):
    """Quotient requested by a non-normal subgroup."""


class NotADivisor(HomcoverError):
    """Sylow subgroup requested for a prime not dividing the order."""


class NotSimple(HomcoverError):
    """A check requiring a nonabelian simple group got something else."""


class EnumerationCapExceeded(HomcoverError):
    """Tuple enumeration would exceed the configured candidate cap."""


class LatticeCapExceeded(HomcoverError):
    """Subgroup lattice requested for a group above the lattice cap."""


class PreconditionViolated(HomcoverError):
    """An operation was called outside its documented preconditions."""


class FreeActionViolated(HomcoverError):
    """Orbit sizes came out unequal; carries the offending sizes."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness
