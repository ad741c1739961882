"""Exception taxonomy.

Three tiers, matching the CLI exit codes: bad input (1), exceeded
bounds/limits (3), and internal invariant violations (2).  The last tier
means the library caught itself producing something the underlying
mathematics says is impossible; those errors always carry enough detail
to reproduce the offending instance.
"""


class ClipseqError(Exception):
    """Base class for all errors raised by this package."""


class InputError(ClipseqError):
    """The caller supplied an invalid or out-of-contract value."""


class ParseError(InputError):
    pass


class NotAPermutation(InputError):
    pass


class PolygonTooSmall(InputError):
    pass


class VertexOutOfRange(InputError):
    pass


class SideAsDiagonal(InputError):
    pass


class CrossingDiagonals(InputError):
    pass


class WrongDiagonalCount(InputError):
    pass


class TooManyDiagonals(InputError):
    pass


class BadDiagonalCount(InputError):
    pass


class NotAvoiding(InputError):
    """The permutation contains a 312 pattern.

    ``witness`` is a triple of 0-based indices (i, j, k) with
    p[j] < p[k] < p[i], when one was located.
    """

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class NotDecent(InputError):
    pass


class BadValueSets(InputError):
    pass


class LabelOutOfRange(InputError):
    pass


class MalformedTree(InputError):
    pass


class UnsupportedFormat(InputError):
    pass


class LimitError(ClipseqError):
    """A configured size bound or limit was exceeded."""


class BoundExceeded(LimitError):
    pass


class LimitExceeded(LimitError):
    pass


class InvariantViolation(ClipseqError):
    """An internal consistency check failed; this should never happen."""


class InnerTriangle(InvariantViolation):
    """A removed triangle shared no side with the polygon."""


class NoPreimage(InvariantViolation):
    """A dissection had no decent preimage in the inverse table."""
