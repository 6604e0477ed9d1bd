"""Exception hierarchy.  CLI exit codes hang off these classes."""


class HSError(Exception):
    """Base class for all package errors."""

    exit_code = 2


class InputError(HSError, ValueError):
    """Malformed input: bad syntax, unknown variable, invalid characteristic."""

    exit_code = 4


class RingMismatch(InputError):
    """Operands live in different polynomial rings."""


class BudgetExceeded(HSError):
    """A step budget (Groebner reductions, searches) ran out.

    Raised instead of returning a possibly wrong answer.
    """

    exit_code = 3


class VerificationError(HSError):
    """An exact re-verification failed.

    Usually this means a hypothesis supplied by the caller (rank, primality,
    equidimensionality, ...) does not hold.
    """

    exit_code = 2


class HypothesisError(VerificationError):
    """A checked precondition of a constructive procedure is false."""
