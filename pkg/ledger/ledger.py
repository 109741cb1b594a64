"""Counted-transfer ledger.

Each live operation validates its preconditions against the current token
map, then emits one or more events. State only ever changes by applying an
event, so replaying the log through the same ``_apply`` path rebuilds the
token map exactly.
"""

import logging
import threading
from dataclasses import replace
from typing import Any, Dict, List, Optional, Tuple

from ledger.errors import (
    CapNotReachedError,
    DuplicateTokenError,
    InvalidGrantError,
    LedgerError,
    LimitBelowCountError,
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
from ledger.models import (
    ZERO_ADDRESS,
    Address,
    EventKind,
    LedgerEvent,
    PolicyKind,
    PostCapPolicy,
    TokenRecord,
    TokenStatus,
)

logger = logging.getLogger(__name__)


def _check_uint(name: str, value: Any) -> None:
    if isinstance(value, bool) or not isinstance(value, int) or value < 0:
        raise LedgerError(f"{name} must be a non-negative integer, got {value!r}")


class Ledger:
    """In-memory counted-transfer ledger with an append-only event log.

    Mutating operations are serialized by an internal lock. Reads return
    copies of token records and never block.

    Attributes:
        allow_unbounded_reset: Whether a capped token may be reset to L=0.
    """

    def __init__(self, allow_unbounded_reset: bool = False):
        """Initialize an empty ledger.

        Args:
            allow_unbounded_reset: Permit ``set_transfer_limit(..., 0)`` on capped tokens.
        """
        self.allow_unbounded_reset = allow_unbounded_reset
        self._tokens: Dict[int, TokenRecord] = {}
        self._events: List[LedgerEvent] = []
        self._next_seq = 0
        self._lock = threading.Lock()

    def __len__(self) -> int:
        return len(self._tokens)

    def __contains__(self, token_id: object) -> bool:
        return token_id in self._tokens

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Ledger):
            return NotImplemented
        return (
            self.allow_unbounded_reset == other.allow_unbounded_reset
            and self._tokens == other._tokens
            and self._events == other._events
        )

    def __repr__(self) -> str:
        return f"Ledger(tokens={len(self._tokens)}, events={len(self._events)})"

    @property
    def events(self) -> Tuple[LedgerEvent, ...]:
        """The event log, oldest first."""
        return tuple(self._events)

    def snapshot(self) -> Dict[int, TokenRecord]:
        """Return a copy of the token map."""
        return {token_id: replace(record) for token_id, record in self._tokens.items()}

    # ------------------------------------------------------------------
    # Reads
    # ------------------------------------------------------------------

    def _get(self, token_id: int) -> TokenRecord:
        try:
            return self._tokens[token_id]
        except KeyError:
            raise UnknownTokenError(f"Unknown token: {token_id}", token_id) from None

    def token(self, token_id: int) -> TokenRecord:
        """Return a copy of a token record (any status)."""
        return replace(self._get(token_id))

    def owner_of(self, token_id: int) -> Address:
        return self._get(token_id).owner

    def status_of(self, token_id: int) -> TokenStatus:
        return self._get(token_id).status

    def transfer_count_of(self, token_id: int) -> int:
        """Number of native transfers the token has consumed."""
        return self._get(token_id).transfer_count

    def transfer_limit_of(self, token_id: int) -> int:
        """Transfer limit of the token; 0 is unbounded."""
        return self._get(token_id).transfer_limit

    def remaining(self, token_id: int) -> Optional[int]:
        """Transfers left before the cap, or None for an unbounded token."""
        return self._get(token_id).remaining

    # ------------------------------------------------------------------
    # Mutations
    # ------------------------------------------------------------------

    def mint(
        self,
        owner: Address,
        token_id: int,
        initial_limit: int = 0,
        policy: Optional[PostCapPolicy] = None,
    ) -> TokenRecord:
        """Create a token with k=0.

        Args:
            owner: First holder.
            token_id: New token identifier.
            initial_limit: Transfer limit L; 0 is unbounded.
            policy: Post-cap policy; provenance freeze when omitted.

        Returns:
            Copy of the new record.

        Raises:
            DuplicateTokenError: If the token id already exists.
            ZeroAddressOwnerError: If owner is the zero address.
        """
        _check_uint("token_id", token_id)
        _check_uint("initial_limit", initial_limit)
        policy = policy or PostCapPolicy()

        with self._lock:
            if token_id in self._tokens:
                raise DuplicateTokenError(f"Token {token_id} already exists", token_id)
            if owner == ZERO_ADDRESS:
                raise ZeroAddressOwnerError("Cannot mint to the zero address", token_id)

            self._emit(
                EventKind.MINTED, token_id,
                owner=owner, limit=initial_limit,
                policy=policy.kind, unlock_grant=policy.unlock_grant,
            )
            return replace(self._tokens[token_id])

    def set_transfer_limit(self, caller: Address, token_id: int, new_limit: int) -> TokenRecord:
        """Update the transfer limit of an active token.

        Setting L' equal to the current count caps the token immediately and
        fires its post-cap policy.

        Raises:
            TokenNotActiveError: If the token is burned or settled.
            NotAuthorizedError: If caller is not the owner.
            UnboundedResetForbiddenError: If L'=0 on a capped token without the flag.
            LimitBelowCountError: If L' is below the accumulated count.
        """
        _check_uint("new_limit", new_limit)

        with self._lock:
            record = self._get(token_id)
            if record.status is not TokenStatus.ACTIVE:
                raise TokenNotActiveError(
                    f"Token {token_id} is {record.status.value}", token_id
                )
            if caller != record.owner:
                raise NotAuthorizedError(f"{caller} does not own token {token_id}", token_id)

            if new_limit == 0:
                if record.is_capped and not self.allow_unbounded_reset:
                    raise UnboundedResetForbiddenError(
                        f"Token {token_id} cannot be reset to unbounded", token_id
                    )
            elif new_limit < record.transfer_count:
                raise LimitBelowCountError(
                    f"Limit {new_limit} is below transfer count {record.transfer_count}",
                    token_id,
                )

            self._emit(EventKind.TRANSFER_LIMIT_UPDATED, token_id, limit=new_limit)
            if record.at_cap:
                self._trigger_policy(record)
            return replace(record)

    def transfer(self, sender: Address, recipient: Address, token_id: int) -> TokenRecord:
        """Move a token between two non-zero addresses, consuming one transfer.

        Raises:
            UnknownTokenError: If the token does not exist.
            TokenNotActiveError: If the token is burned, or settled below its cap.
            TransferLimitReachedError: If L > 0 and k >= L.
            ZeroAddressError: If either endpoint is the zero address.
            NotOwnerError: If sender is not the current owner.
        """
        with self._lock:
            record = self._get(token_id)
            if record.status is TokenStatus.BURNED:
                raise TokenNotActiveError(f"Token {token_id} is burned", token_id)
            if record.at_cap:
                raise TransferLimitReachedError(token_id)
            if record.status is not TokenStatus.ACTIVE:
                raise TokenNotActiveError(
                    f"Token {token_id} is {record.status.value}", token_id
                )
            if sender == ZERO_ADDRESS or recipient == ZERO_ADDRESS:
                raise ZeroAddressError("Transfer endpoints must be non-zero", token_id)
            if sender != record.owner:
                raise NotOwnerError(f"{sender} does not own token {token_id}", token_id)

            self._emit(EventKind.TRANSFERRED, token_id, sender=sender, recipient=recipient)
            self._emit(
                EventKind.TRANSFER_COUNT_INCREASED, token_id,
                count=record.transfer_count + 1,
            )
            if record.at_cap:
                self._trigger_policy(record)
            return replace(record)

    def burn(self, caller: Address, token_id: int) -> None:
        """Destroy an active token. The transfer count is left unchanged.

        Raises:
            TokenNotActiveError: If the token is already burned or settled.
            NotAuthorizedError: If caller is not the owner.
        """
        with self._lock:
            record = self._get(token_id)
            if record.status is not TokenStatus.ACTIVE:
                raise TokenNotActiveError(
                    f"Token {token_id} is {record.status.value}", token_id
                )
            if caller != record.owner:
                raise NotAuthorizedError(f"{caller} does not own token {token_id}", token_id)
            self._emit(EventKind.BURNED, token_id)

    def apply_post_cap_policy(self, token_id: int) -> TokenRecord:
        """Fire the post-cap policy of an active token sitting at its cap.

        Transfers and limit updates already fire the policy as soon as k
        reaches L, so this only succeeds for state built some other way.

        Raises:
            TokenNotActiveError: If the token is not active.
            CapNotReachedError: If L = 0 or k < L.
        """
        with self._lock:
            record = self._get(token_id)
            if record.status is not TokenStatus.ACTIVE:
                raise TokenNotActiveError(
                    f"Token {token_id} is {record.status.value}", token_id
                )
            if not record.at_cap:
                raise CapNotReachedError(
                    f"Token {token_id} has {record.remaining} transfers left", token_id
                )
            self._trigger_policy(record)
            return replace(record)

    def unlock(self, token_id: int, grant: Optional[int] = None) -> TokenRecord:
        """Release a token locked under lock-and-release.

        The limit is raised by ``grant`` (default: the policy's unlock_grant)
        and the token becomes active again.

        Raises:
            NotLockedError: If the token is not a settled lock-and-release token.
            InvalidGrantError: If no grant is available or it is not positive.
        """
        with self._lock:
            record = self._get(token_id)
            if (record.status is not TokenStatus.SETTLED
                    or record.policy.kind is not PolicyKind.LOCK_AND_RELEASE):
                raise NotLockedError(f"Token {token_id} is not locked", token_id)

            if grant is None:
                grant = record.policy.unlock_grant
            if grant is None:
                raise InvalidGrantError(f"Token {token_id} has no default unlock grant", token_id)
            if isinstance(grant, bool) or not isinstance(grant, int) or grant < 1:
                raise InvalidGrantError(f"Grant must be a positive integer, got {grant!r}", token_id)

            self._emit(EventKind.RELEASED, token_id, grant=grant)
            self._emit(
                EventKind.TRANSFER_LIMIT_UPDATED, token_id,
                limit=record.transfer_limit + grant,
            )
            logger.debug(f"Token {token_id} released with grant {grant}")
            return replace(record)

    # ------------------------------------------------------------------
    # Event application
    # ------------------------------------------------------------------

    def _trigger_policy(self, record: TokenRecord) -> None:
        logger.debug(f"Token {record.token_id} reached cap {record.transfer_limit}: "
                     f"{record.policy.kind.value}")
        self._emit(EventKind.POLICY_TRIGGERED, record.token_id, policy=record.policy.kind)

    def _emit(self, kind: EventKind, token_id: int, **fields: Any) -> LedgerEvent:
        event = LedgerEvent(seq=self._next_seq, kind=kind, token_id=token_id, **fields)
        self._apply(event)
        return event

    def _apply(self, event: LedgerEvent) -> None:
        """Apply an event that has already been validated and append it to the log."""
        kind = event.kind
        if kind is EventKind.MINTED:
            assert event.owner is not None and event.limit is not None
            self._tokens[event.token_id] = TokenRecord(
                token_id=event.token_id,
                owner=event.owner,
                transfer_count=0,
                transfer_limit=event.limit,
                policy=PostCapPolicy(event.policy or PolicyKind.PROVENANCE_FREEZE,
                                     event.unlock_grant),
            )
        else:
            record = self._tokens[event.token_id]
            if kind is EventKind.TRANSFERRED:
                assert event.recipient is not None
                record.owner = event.recipient
            elif kind is EventKind.TRANSFER_COUNT_INCREASED:
                assert event.count is not None
                record.transfer_count = event.count
            elif kind is EventKind.TRANSFER_LIMIT_UPDATED:
                assert event.limit is not None
                record.transfer_limit = event.limit
            elif kind is EventKind.BURNED:
                record.status = TokenStatus.BURNED
            elif kind is EventKind.POLICY_TRIGGERED:
                if event.policy is PolicyKind.AUTO_BURN:
                    record.status = TokenStatus.BURNED
                else:
                    record.status = TokenStatus.SETTLED
            elif kind is EventKind.RELEASED:
                record.status = TokenStatus.ACTIVE

        self._events.append(event)
        self._next_seq = event.seq + 1
