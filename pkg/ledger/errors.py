"""Exceptions raised by the counted-transfer ledger."""

from typing import Optional


class LedgerError(Exception):
    """Base exception for ledger operations."""

    def __init__(self, message: str, token_id: Optional[int] = None):
        """Initialize the error.

        Args:
            message: Error description.
            token_id: Token the failed operation targeted, if any.
        """
        self.token_id = token_id
        super().__init__(message)


class DuplicateTokenError(LedgerError):
    """Raised when minting a token id that already exists."""
    pass


class ZeroAddressOwnerError(LedgerError):
    """Raised when minting to the zero address."""
    pass


class ZeroAddressError(LedgerError):
    """Raised when a transfer names the zero address as sender or recipient."""
    pass


class UnknownTokenError(LedgerError):
    """Raised when reading a token that was never minted."""
    pass


class TokenNotActiveError(LedgerError):
    """Raised when mutating a burned or settled token."""
    pass


class NotAuthorizedError(LedgerError):
    """Raised when the caller is not the token owner."""
    pass


class NotOwnerError(LedgerError):
    """Raised when the transfer sender is not the current owner."""
    pass


class TransferLimitReachedError(LedgerError):
    """Raised when a capped token has no transfers left."""

    def __init__(self, token_id: Optional[int] = None):
        super().__init__("transfer limit reached", token_id)


class LimitBelowCountError(LedgerError):
    """Raised when a new limit is lower than the accumulated count."""
    pass


class UnboundedResetForbiddenError(LedgerError):
    """Raised when a capped token is reset to unbounded without the flag."""
    pass


class CapNotReachedError(LedgerError):
    """Raised when the post-cap policy is applied before k reaches L."""
    pass


class NotLockedError(LedgerError):
    """Raised when releasing a token that is not locked under lock-and-release."""
    pass


class InvalidGrantError(LedgerError):
    """Raised when a release grant is missing or not positive."""
    pass


class EventLogParseError(LedgerError):
    """Raised when a serialized event log line cannot be decoded."""

    def __init__(self, message: str, line_number: int):
        self.line_number = line_number
        super().__init__(f"line {line_number}: {message}")


class InvalidHistoryError(LedgerError):
    """Raised by replay when an event is illegal in the preceding state.

    Attributes:
        index: Position of the first illegal event in the replayed sequence.
    """

    def __init__(self, index: int, reason: str):
        self.index = index
        self.reason = reason
        super().__init__(f"event {index}: {reason}")


class MalformedEventError(LedgerError):
    """Raised when an event record is missing fields or has wrong types."""
    pass


class EventLogNotFoundError(LedgerError):
    """Raised when an event log file does not exist."""
    pass
