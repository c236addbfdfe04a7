"""Exception hierarchy.

Everything raised on purpose by the library derives from ``BlockHeightError`` so
the CLI can map it to a single exit status.
"""


class BlockHeightError(Exception):
    """Base class for computational failures."""


class CapExceeded(BlockHeightError):
    pass


class NotASubgroup(BlockHeightError):
    pass


class NotNormal(BlockHeightError):
    pass


class NotAPGroup(BlockHeightError):
    pass


class HashCollision(BlockHeightError):
    """Two distinct permutations hashed to the same 64-bit code."""


class NoSuitablePrime(BlockHeightError):
    pass


class EigenspaceSplitFailure(BlockHeightError):
    pass


class FormatError(BlockHeightError):
    pass


class InvariantViolation(BlockHeightError):
    pass


class NonIntegralMultiplicity(BlockHeightError):
    pass


class NonIntegralOmega(BlockHeightError):
    pass


class BadActionParameter(BlockHeightError):
    pass


class DefectOrderMismatch(BlockHeightError):
    pass
