"""Exception types shared across the package."""


class CoalstabError(Exception):
    """Base class for every error raised by this package."""


class InputError(CoalstabError):
    """Malformed input: bad coalition masks, wrong lengths, or unparsable text."""


class CapExceeded(CoalstabError):
    """A size guard refused an operation that would be combinatorially too large."""


class EmptyBlockAllocation(CoalstabError):
    """A block's value cannot cover its members' stand-alone values."""

    def __init__(self, block: int, message: str):
        super().__init__(message)
        self.block = block


class NoNonGrandPartition(CoalstabError):
    """Single-player games have no partition other than the grand one."""


class InfeasiblePair(CoalstabError):
    """The allocation is not feasible for the partition it is paired with."""


class NoCoarsening(CoalstabError):
    """The all-consolidated partition has no coarser neighbor."""
