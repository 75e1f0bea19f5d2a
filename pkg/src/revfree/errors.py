"""Shared exception types."""


class PreconditionError(ValueError):
    """An operation was called with inputs violating its contract.

    Instances may carry a ``witness`` attribute pointing at the offending
    structure (e.g. the row/column subsets of a forbidden pattern, or the
    word pair and positions of a reverse).
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class CapacityError(PreconditionError):
    """Input is structurally valid but exceeds a hard size guard."""


class InvariantError(RuntimeError):
    """A guaranteed postcondition failed; indicates a bug, not bad input."""
