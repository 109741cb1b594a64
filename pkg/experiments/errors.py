"""Exceptions raised by the experiment runner."""

from typing import Optional


class ExperimentError(Exception):
    """Base exception for experiment runs."""
    pass


class ScenarioError(ExperimentError):
    """Raised when a scenario file or override is invalid."""

    def __init__(self, message: str, key_path: Optional[str] = None):
        """Initialize the error.

        Args:
            message: Error description.
            key_path: Dotted path of the offending key, if any.
        """
        self.key_path = key_path
        super().__init__(message)


class ManifestError(ExperimentError):
    """Raised when a run manifest is missing or malformed."""
    pass


class UnknownSubcommandError(ExperimentError):
    """Raised when asked to run an experiment that does not exist."""
    pass


class InvariantViolationError(ExperimentError):
    """Raised after a run whose invariant checks failed; outputs are still written."""
    pass


class VerificationError(ExperimentError):
    """Raised when outputs do not match the expected tables."""
    pass
