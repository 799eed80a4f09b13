"""Exception types shared across the package."""


class SweeplexError(Exception):
    """Base class for all library errors."""


class InvalidInput(SweeplexError):
    """Malformed or out-of-contract input data."""


class NotFound(SweeplexError):
    """A simplex was expected to be present in a complex but is not."""


class NoPerpendicular(SweeplexError):
    """A simplex spans the ambient space, so no perpendicular direction exists."""


class VerificationFailed(SweeplexError):
    """Rejection sampling could not produce a verified ordering circle.

    Signals either a general-position violation in the input or an
    exceptionally unlucky run; the message carries the offending simplex.
    """


class NotPerpendicular(SweeplexError):
    """An oracle query direction is not perpendicular to the queried simplex."""


class InternalInvariantViolation(SweeplexError):
    """A precondition breach surfaced as an inconsistency during a search."""


class ReconstructionMismatch(SweeplexError):
    """Check-mode reconstruction disagrees with the hidden ground truth."""


class Unsupported(SweeplexError):
    """Requested operation is outside the supported parameter range."""
