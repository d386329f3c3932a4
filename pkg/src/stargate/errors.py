"""Exception hierarchy shared by every module."""


class StargateError(Exception):
    """Base class for all errors raised by the package."""


class ArgumentError(StargateError, ValueError):
    """An argument is malformed (non-prime modulus, singular matrix, ...)."""


class PreconditionError(StargateError, ValueError):
    """An operation was called outside its documented precondition.

    ``witness`` carries whatever data demonstrates the violation (an index
    pair, a degree, ...), so callers can report it without re-deriving it.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class DegenerateInputError(StargateError, ValueError):
    """Input is well-formed but carries no information (zero polynomial, empty list)."""


class NotFoundError(StargateError, LookupError):
    """A bounded search finished without a result."""


class InvariantError(StargateError, RuntimeError):
    """An internal consistency check failed. Always a bug or a verification failure."""
