"""Exception hierarchy shared by every frugal module.

Input-validation errors also derive from ``ValueError`` so callers that
guard numeric code with ``except ValueError`` keep working.
"""


class FacError(Exception):
    """Base class for all frugal errors."""


class ConfigError(FacError, ValueError):
    """Unknown configuration key or malformed value."""


class NonFiniteInput(FacError, ValueError):
    pass


class DegenerateRollout(FacError, ValueError):
    """Rollout carries no usable variance (or no rows at all)."""


class NonFiniteState(FacError, ValueError):
    pass


class ShapeMismatch(FacError, ValueError):
    pass


class NonFiniteTransition(FacError, ValueError):
    pass


class NonFiniteAction(FacError, ValueError):
    pass


class EmptyBuffer(FacError):
    pass


class InvariantViolation(FacError):
    """Buffer storage, ledger and counters disagree."""


class SnapshotError(FacError):
    pass


class FormatError(SnapshotError):
    """Bad magic, unsupported version or truncated container."""


class CorruptSnapshot(SnapshotError):
    """Checksum mismatch."""


class DivergedTraining(FacError):
    pass


class EmptyCurve(FacError, ValueError):
    pass


class DivisionDegenerate(FacError, ZeroDivisionError):
    pass


class DomainError(FacError, ValueError):
    pass


class NotADistribution(FacError, ValueError):
    pass


class RunLogError(FacError):
    """Missing or unparsable run.jsonl."""
