"""Counted-transfer token ledger with post-cap policies and event-log replay."""

from ledger.errors import (
    CapNotReachedError,
    DuplicateTokenError,
    EventLogNotFoundError,
    EventLogParseError,
    InvalidGrantError,
    InvalidHistoryError,
    LedgerError,
    LimitBelowCountError,
    MalformedEventError,
    NotAuthorizedError,
    NotLockedError,
    NotOwnerError,
    TokenNotActiveError,
    TransferLimitReachedError,
    UnboundedResetForbiddenError,
    UnknownTokenError,
    ZeroAddressError,
    ZeroAddressOwnerError,
)
from ledger.eventlog import (
    dumps_events,
    loads_events,
    read_event_log,
    replay,
    write_event_log,
)
from ledger.fuzz import (
    FuzzReport,
    LivenessReport,
    address_pool,
    enumerate_liveness,
    is_terminal,
    run_fuzz,
    transfer_should_succeed,
)
from ledger.ledger import Ledger
from ledger.models import (
    POST_CAP_PATHS,
    ZERO_ADDRESS,
    Address,
    EventKind,
    LedgerEvent,
    PolicyKind,
    PostCapPath,
    PostCapPolicy,
    TokenRecord,
    TokenStatus,
    post_cap_paths,
)

__all__ = [
    # Models
    'Address',
    'ZERO_ADDRESS',
    'TokenStatus',
    'PolicyKind',
    'PostCapPolicy',
    'TokenRecord',
    'EventKind',
    'LedgerEvent',
    'PostCapPath',
    'POST_CAP_PATHS',
    'post_cap_paths',
    # Ledger
    'Ledger',
    # Event log
    'dumps_events',
    'loads_events',
    'read_event_log',
    'write_event_log',
    'replay',
    # Fuzzing
    'FuzzReport',
    'LivenessReport',
    'address_pool',
    'enumerate_liveness',
    'is_terminal',
    'run_fuzz',
    'transfer_should_succeed',
    # Errors
    'LedgerError',
    'DuplicateTokenError',
    'ZeroAddressOwnerError',
    'ZeroAddressError',
    'UnknownTokenError',
    'TokenNotActiveError',
    'NotAuthorizedError',
    'NotOwnerError',
    'TransferLimitReachedError',
    'LimitBelowCountError',
    'UnboundedResetForbiddenError',
    'CapNotReachedError',
    'NotLockedError',
    'InvalidGrantError',
    'EventLogParseError',
    'EventLogNotFoundError',
    'InvalidHistoryError',
    'MalformedEventError',
]
