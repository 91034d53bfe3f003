"""Exception hierarchy shared across the package."""


class MaxitiveError(Exception):
    """Base class for every error raised by this package."""


class InputError(MaxitiveError):
    """Malformed, inconsistent, or out-of-range input data."""


class ValidationError(InputError):
    """Input data violates a structural law; carries a witness when one exists."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class PreconditionError(MaxitiveError):
    """A documented mathematical precondition of an operation is not met."""


class BudgetError(MaxitiveError):
    """A requested exhaustive computation exceeds the supported bounds."""


class CrossCheckError(MaxitiveError):
    """Two independent routes to the same value disagreed.

    Raised by operations that compute a result twice (definition vs.
    closed form, or two equivalent formulas) and compare.  Reaching this
    error means a law the library relies on failed on a concrete input,
    so the verification harness records it as a violation rather than
    as a crash.
    """


class MissingSupremumError(PreconditionError):
    """A required least upper bound does not exist in the value lattice."""


class MissingInfimumError(PreconditionError):
    """A required greatest lower bound does not exist in the value lattice."""
