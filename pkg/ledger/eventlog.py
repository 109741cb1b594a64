"""Event log serialization and replay.

A log is JSON Lines: one flat object per event with ``seq``, ``kind``,
``token_id`` and the kind-specific fields. ``replay`` checks that every
event is legal in the state preceding it before applying it, so a log that
loads is a log the live ledger could have produced.
"""

import json
import logging
from pathlib import Path
from typing import Iterable, List, Optional, Sequence, Tuple, Union

from ledger.errors import (
    EventLogNotFoundError,
    EventLogParseError,
    InvalidGrantError,
    InvalidHistoryError,
    MalformedEventError,
)
from ledger.ledger import Ledger
from ledger.models import (
    ZERO_ADDRESS,
    EventKind,
    LedgerEvent,
    PolicyKind,
    PostCapPolicy,
    TokenStatus,
)

logger = logging.getLogger(__name__)


def dumps_events(events: Iterable[LedgerEvent]) -> str:
    """Serialize events to JSON Lines text (trailing newline included)."""
    lines = [json.dumps(event.to_dict(), sort_keys=True, separators=(',', ':')) for event in events]
    return ''.join(line + '\n' for line in lines)


def loads_events(text: str) -> List[LedgerEvent]:
    """Parse JSON Lines text into events. Blank lines are skipped.

    Raises:
        EventLogParseError: If a line is not valid JSON or not a valid event.
    """
    events = []
    for line_number, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            data = json.loads(line)
        except json.JSONDecodeError as e:
            raise EventLogParseError(f"invalid JSON: {e.msg}", line_number) from e
        try:
            events.append(LedgerEvent.from_dict(data))
        except MalformedEventError as e:
            raise EventLogParseError(str(e), line_number) from e
    return events


def write_event_log(path: Union[str, Path], events: Iterable[LedgerEvent]) -> Path:
    """Write events to a JSON Lines file."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    text = dumps_events(events)
    with open(path, 'w', encoding='utf-8', newline='\n') as f:
        f.write(text)
    logger.debug(f"Wrote {text.count(chr(10))} events to {path}")
    return path


def read_event_log(path: Union[str, Path]) -> List[LedgerEvent]:
    """Load events from a JSON Lines file.

    Raises:
        EventLogNotFoundError: If the file does not exist.
        EventLogParseError: If a line cannot be decoded.
    """
    path = Path(path)
    if not path.exists():
        raise EventLogNotFoundError(f"Event log not found: {path}")
    with open(path, 'r', encoding='utf-8') as f:
        events = loads_events(f.read())
    logger.info(f"Loaded {len(events)} events from {path}")
    return events


class _HistoryChecker:
    """Checks each event against the ledger state that precedes it.

    Events that the live ledger always emits in a fixed order are tracked
    as a pending expectation: a Transferred must be followed by the matching
    TransferCountIncreased, a Released by the matching TransferLimitUpdated,
    and reaching the cap by the token's PolicyTriggered.
    """

    def __init__(self, ledger: Ledger):
        self.ledger = ledger
        self.last_seq: Optional[int] = None
        # (kind, token_id, expected count/limit or None)
        self.pending: Optional[Tuple[EventKind, int, Optional[int]]] = None

    def check(self, event: LedgerEvent) -> Optional[str]:
        """Return the reason the event is illegal, or None if it may be applied."""
        if self.last_seq is not None and event.seq <= self.last_seq:
            return f"sequence number {event.seq} does not follow {self.last_seq}"

        if self.pending is not None:
            kind, token_id, value = self.pending
            if event.kind is not kind or event.token_id != token_id:
                return f"expected {kind.value} for token {token_id}, got {event.kind.value}"
            if kind is EventKind.TRANSFER_COUNT_INCREASED and event.count != value:
                return f"count {event.count} does not follow Transferred (expected {value})"
            if kind is EventKind.TRANSFER_LIMIT_UPDATED and event.limit != value:
                return f"limit {event.limit} does not match release (expected {value})"
            if kind is EventKind.POLICY_TRIGGERED:
                return self._check_policy(event)
            return None

        if event.kind is EventKind.MINTED:
            return self._check_mint(event)

        if event.token_id not in self.ledger:
            return f"{event.kind.value} for unknown token {event.token_id}"
        record = self.ledger.token(event.token_id)

        if event.kind is EventKind.TRANSFERRED:
            if record.status is not TokenStatus.ACTIVE:
                return f"transfer of {record.status.value} token"
            if record.at_cap:
                return "transfer limit reached"
            if event.sender == ZERO_ADDRESS or event.recipient == ZERO_ADDRESS:
                return "transfer endpoint is the zero address"
            if event.sender != record.owner:
                return f"sender {event.sender} is not the owner"
            return None

        if event.kind is EventKind.TRANSFER_COUNT_INCREASED:
            return "TransferCountIncreased without a preceding Transferred"

        if event.kind is EventKind.TRANSFER_LIMIT_UPDATED:
            if record.status is not TokenStatus.ACTIVE:
                return f"limit update on {record.status.value} token"
            assert event.limit is not None
            if event.limit == 0:
                if record.is_capped and not self.ledger.allow_unbounded_reset:
                    return "reset to unbounded is not allowed"
            elif event.limit < record.transfer_count:
                return f"limit {event.limit} is below count {record.transfer_count}"
            return None

        if event.kind is EventKind.BURNED:
            if record.status is not TokenStatus.ACTIVE:
                return f"burn of {record.status.value} token"
            return None

        if event.kind is EventKind.POLICY_TRIGGERED:
            return self._check_policy(event)

        if event.kind is EventKind.RELEASED:
            if (record.status is not TokenStatus.SETTLED
                    or record.policy.kind is not PolicyKind.LOCK_AND_RELEASE):
                return "release of a token that is not locked"
            if event.grant is None or event.grant < 1:
                return f"invalid grant {event.grant}"
            return None

        return f"unsupported event kind {event.kind.value}"

    def _check_mint(self, event: LedgerEvent) -> Optional[str]:
        if event.token_id in self.ledger:
            return f"token {event.token_id} minted twice"
        if event.owner == ZERO_ADDRESS:
            return "mint to the zero address"
        try:
            PostCapPolicy(event.policy or PolicyKind.PROVENANCE_FREEZE, event.unlock_grant)
        except InvalidGrantError as e:
            return str(e)
        return None

    def _check_policy(self, event: LedgerEvent) -> Optional[str]:
        if event.token_id not in self.ledger:
            return f"PolicyTriggered for unknown token {event.token_id}"
        record = self.ledger.token(event.token_id)
        if record.status is not TokenStatus.ACTIVE:
            return f"policy triggered on {record.status.value} token"
        if not record.at_cap:
            return "policy triggered before the cap was reached"
        if event.policy is not record.policy.kind:
            return f"policy {event.policy} does not match minted policy {record.policy.kind.value}"
        return None

    def advance(self, event: LedgerEvent) -> None:
        """Update the pending expectation after ``event`` has been applied."""
        self.last_seq = event.seq
        self.pending = None
        if event.kind is EventKind.TRANSFERRED:
            count = self.ledger.transfer_count_of(event.token_id) + 1
            self.pending = (EventKind.TRANSFER_COUNT_INCREASED, event.token_id, count)
        elif event.kind is EventKind.RELEASED:
            assert event.grant is not None
            limit = self.ledger.transfer_limit_of(event.token_id) + event.grant
            self.pending = (EventKind.TRANSFER_LIMIT_UPDATED, event.token_id, limit)
        elif event.kind in (EventKind.TRANSFER_COUNT_INCREASED, EventKind.TRANSFER_LIMIT_UPDATED):
            record = self.ledger.token(event.token_id)
            if record.status is TokenStatus.ACTIVE and record.at_cap:
                self.pending = (EventKind.POLICY_TRIGGERED, event.token_id, None)


def replay(events: Sequence[LedgerEvent], allow_unbounded_reset: bool = False) -> Ledger:
    """Rebuild a ledger from its event log.

    Args:
        events: Events in log order.
        allow_unbounded_reset: Configuration flag of the ledger that produced the log.

    Returns:
        A ledger equal to the one that produced ``events``.

    Raises:
        InvalidHistoryError: At the first event that is illegal in its preceding
            state; a log that ends mid-operation fails at index ``len(events)``.
    """
    ledger = Ledger(allow_unbounded_reset=allow_unbounded_reset)
    checker = _HistoryChecker(ledger)

    for index, event in enumerate(events):
        reason = checker.check(event)
        if reason is not None:
            raise InvalidHistoryError(index, reason)
        ledger._apply(event)
        checker.advance(event)

    if checker.pending is not None:
        kind, token_id, _ = checker.pending
        raise InvalidHistoryError(
            len(events), f"log ends before {kind.value} for token {token_id}"
        )

    logger.debug(f"Replayed {len(events)} events into {len(ledger)} tokens")
    return ledger
