"""Exception types shared across the package."""


class ChordalAutError(Exception):
    """Base class for all package errors."""


class NotChordalError(ChordalAutError):
    """Raised when an operation requires a chordal graph."""


class NotIntervalError(ChordalAutError):
    """Raised when an operation requires an interval graph."""


class StructuralError(ChordalAutError):
    """A structural invariant that the algorithms rely on was violated.

    This signals either malformed input (e.g. a bag that does not induce a
    subtree) or an internal inconsistency that must not be papered over.
    """


class NonCriticalDeadlock(ChordalAutError):
    """The critical-set refinement loop cannot make progress.

    Happens only when the leafage threshold in use is smaller than the true
    leafage of the input; the caller should retry with a larger threshold.
    """

    def __init__(self, threshold: int):
        super().__init__(
            f"refinement deadlock at leafage threshold {threshold}; "
            f"the threshold is below the leafage of the input"
        )
        self.threshold = threshold


class ParseError(ChordalAutError):
    """Malformed graph or coloring input."""
