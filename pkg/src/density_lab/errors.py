"""Exception hierarchy. The CLI maps these onto exit codes."""


class DensityLabError(Exception):
    """Base class for all library errors."""


class InstanceParseError(DensityLabError):
    """Malformed instance file or inline object (CLI exit code 2)."""


class PreconditionError(DensityLabError):
    """An operation's precondition does not hold (CLI exit code 3)."""


class VerificationError(DensityLabError):
    """An exact re-verification failed; carries a counterexample (CLI exit code 4)."""

    def __init__(self, message, counterexample=None):
        super().__init__(message)
        self.counterexample = counterexample


class ShapeMismatchError(PreconditionError):
    """Element does not belong to the stated group."""


class CapExceededError(PreconditionError):
    """An enumeration or search cap would be exceeded."""
