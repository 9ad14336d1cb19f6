"""Exception and warning types shared across the package."""


class ZetaMellinError(Exception):
    """Base class; ``kind`` is the machine-readable name used by the CLI."""

    kind = "error"

    def __init__(self, message, **context):
        super().__init__(message)
        self.context = context


class PoleError(ZetaMellinError, ValueError):
    kind = "pole"


class DomainError(ZetaMellinError, ValueError):
    kind = "domain"


class ConfigError(ZetaMellinError, ValueError):
    kind = "config"


class AccuracyError(ZetaMellinError, ArithmeticError):
    kind = "accuracy"


class ConditioningError(ZetaMellinError, ArithmeticError):
    kind = "conditioning"


class BoundaryZeroError(ZetaMellinError, ArithmeticError):
    kind = "boundary-zero"


class PhaseTrackingError(ZetaMellinError, ArithmeticError):
    kind = "phase-tracking"


class NearIntegerWarning(UserWarning):
    """Evaluation point sits on a removable pole of the Hankel normalization."""
