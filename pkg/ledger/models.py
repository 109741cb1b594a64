"""Data model for the counted-transfer ledger.

Tokens carry a transfer count ``k`` and a transfer limit ``L`` (0 means
unbounded). Every mutation of the ledger is recorded as a ``LedgerEvent``;
events serialize to flat dictionaries so that a log can be written one
record per line and replayed later.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, List, NewType, Optional, Tuple

from ledger.errors import InvalidGrantError, MalformedEventError

Address = NewType('Address', str)

ZERO_ADDRESS = Address("0x" + "0" * 40)


class TokenStatus(Enum):
    """Lifecycle status of a token."""
    ACTIVE = "Active"
    BURNED = "Burned"
    SETTLED = "Settled"


class PolicyKind(Enum):
    """Destination of a token once its transfer budget is exhausted."""
    SOULBOUND_CONVERT = "soulbound_convert"
    AUTO_BURN = "auto_burn"
    LOCK_AND_RELEASE = "lock_and_release"
    PROVENANCE_FREEZE = "provenance_freeze"


@dataclass(frozen=True)
class PostCapPolicy:
    """Post-cap policy fixed at mint.

    Attributes:
        kind: Which destination path the token follows at k = L.
        unlock_grant: Default budget granted on release. Only meaningful for
            lock-and-release; None means every unlock must name a grant.
    """
    kind: PolicyKind = PolicyKind.PROVENANCE_FREEZE
    unlock_grant: Optional[int] = None

    def __post_init__(self) -> None:
        if self.unlock_grant is None:
            return
        if self.kind is not PolicyKind.LOCK_AND_RELEASE:
            raise InvalidGrantError(
                f"unlock_grant is only valid for lock_and_release, not {self.kind.value}"
            )
        if isinstance(self.unlock_grant, bool) or not isinstance(self.unlock_grant, int):
            raise InvalidGrantError(f"unlock_grant must be an integer, got {self.unlock_grant!r}")
        if self.unlock_grant < 1:
            raise InvalidGrantError(f"unlock_grant must be positive, got {self.unlock_grant}")

    @classmethod
    def soulbound(cls) -> 'PostCapPolicy':
        return cls(PolicyKind.SOULBOUND_CONVERT)

    @classmethod
    def auto_burn(cls) -> 'PostCapPolicy':
        return cls(PolicyKind.AUTO_BURN)

    @classmethod
    def lock_and_release(cls, unlock_grant: Optional[int] = None) -> 'PostCapPolicy':
        return cls(PolicyKind.LOCK_AND_RELEASE, unlock_grant)

    @classmethod
    def provenance_freeze(cls) -> 'PostCapPolicy':
        return cls(PolicyKind.PROVENANCE_FREEZE)


@dataclass
class TokenRecord:
    """Per-token transfer state.

    Attributes:
        token_id: Dense unsigned token identifier.
        owner: Current holder. Never the zero address.
        transfer_count: Native transfers consumed so far (k).
        transfer_limit: Transfer budget (L); 0 is unbounded.
        status: Active, Burned or Settled.
        policy: Post-cap policy chosen at mint.
    """
    token_id: int
    owner: Address
    transfer_count: int = 0
    transfer_limit: int = 0
    status: TokenStatus = TokenStatus.ACTIVE
    policy: PostCapPolicy = PostCapPolicy()

    @property
    def is_capped(self) -> bool:
        return self.transfer_limit > 0

    @property
    def remaining(self) -> Optional[int]:
        """Transfers left, or None when the token is unbounded."""
        if not self.is_capped:
            return None
        return self.transfer_limit - self.transfer_count

    @property
    def at_cap(self) -> bool:
        return self.is_capped and self.transfer_count >= self.transfer_limit


class EventKind(Enum):
    """Tag of a ledger event."""
    MINTED = "Minted"
    TRANSFERRED = "Transferred"
    TRANSFER_COUNT_INCREASED = "TransferCountIncreased"
    TRANSFER_LIMIT_UPDATED = "TransferLimitUpdated"
    BURNED = "Burned"
    POLICY_TRIGGERED = "PolicyTriggered"
    RELEASED = "Released"


# Serialized field name -> (LedgerEvent attribute, expected type)
_EVENT_FIELDS: Dict[EventKind, List[Tuple[str, str, type]]] = {
    EventKind.MINTED: [('owner', 'owner', str), ('limit', 'limit', int), ('policy', 'policy', str)],
    EventKind.TRANSFERRED: [('from', 'sender', str), ('to', 'recipient', str)],
    EventKind.TRANSFER_COUNT_INCREASED: [('count', 'count', int)],
    EventKind.TRANSFER_LIMIT_UPDATED: [('limit', 'limit', int)],
    EventKind.BURNED: [],
    EventKind.POLICY_TRIGGERED: [('policy', 'policy', str)],
    EventKind.RELEASED: [('grant', 'grant', int)],
}

_OPTIONAL_FIELDS: Dict[EventKind, List[str]] = {
    EventKind.MINTED: ['unlock_grant'],
}


def _is_uint(value: Any) -> bool:
    return isinstance(value, int) and not isinstance(value, bool) and value >= 0


@dataclass(frozen=True)
class LedgerEvent:
    """One entry of the append-only event log.

    Only the fields relevant to ``kind`` are set; the rest stay None.

    Attributes:
        seq: Strictly increasing sequence number.
        kind: Event tag.
        token_id: Token the event refers to.
        owner: Minted owner.
        sender: Transferred ``from`` address.
        recipient: Transferred ``to`` address.
        limit: Minted or updated transfer limit.
        count: New transfer count.
        policy: Policy kind (Minted, PolicyTriggered).
        unlock_grant: Default release grant recorded at mint.
        grant: Budget granted by a release.
    """
    seq: int
    kind: EventKind
    token_id: int
    owner: Optional[Address] = None
    sender: Optional[Address] = None
    recipient: Optional[Address] = None
    limit: Optional[int] = None
    count: Optional[int] = None
    policy: Optional[PolicyKind] = None
    unlock_grant: Optional[int] = None
    grant: Optional[int] = None

    def to_dict(self) -> Dict[str, Any]:
        """Flatten the event into a JSON-compatible dictionary."""
        data: Dict[str, Any] = {
            'seq': self.seq,
            'kind': self.kind.value,
            'token_id': self.token_id,
        }
        for key, attr, _ in _EVENT_FIELDS[self.kind]:
            value = getattr(self, attr)
            data[key] = value.value if isinstance(value, Enum) else value
        if self.kind is EventKind.MINTED and self.unlock_grant is not None:
            data['unlock_grant'] = self.unlock_grant
        return data

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'LedgerEvent':
        """Create a LedgerEvent from a dictionary.

        Args:
            data: Flat event record as produced by :meth:`to_dict`.

        Returns:
            LedgerEvent instance.

        Raises:
            MalformedEventError: If fields are missing, unknown or mistyped.
        """
        if not isinstance(data, dict):
            raise MalformedEventError(f"Event must be an object, got {type(data).__name__}")

        try:
            kind = EventKind(data['kind'])
        except (KeyError, ValueError) as e:
            raise MalformedEventError(
                f"Invalid event kind: {data.get('kind', 'missing')}"
            ) from e

        for key in ('seq', 'token_id'):
            if not _is_uint(data.get(key)):
                raise MalformedEventError(
                    f"Invalid {key}: {data.get(key)!r}. Must be a non-negative integer."
                )

        fields = _EVENT_FIELDS[kind]
        allowed = {'seq', 'kind', 'token_id'} | {key for key, _, _ in fields}
        allowed |= set(_OPTIONAL_FIELDS.get(kind, []))
        unknown = sorted(set(data) - allowed)
        if unknown:
            raise MalformedEventError(f"Unknown fields for {kind.value}: {', '.join(unknown)}")

        kwargs: Dict[str, Any] = {}
        for key, attr, expected in fields:
            if key not in data:
                raise MalformedEventError(f"{kind.value} requires '{key}' field.")
            value = data[key]
            if expected is int and not _is_uint(value):
                raise MalformedEventError(
                    f"Invalid {key}: {value!r}. Must be a non-negative integer."
                )
            if expected is str and not isinstance(value, str):
                raise MalformedEventError(f"Invalid {key}: {value!r}. Must be a string.")
            kwargs[attr] = value

        if 'policy' in kwargs:
            try:
                kwargs['policy'] = PolicyKind(kwargs['policy'])
            except ValueError as e:
                raise MalformedEventError(f"Invalid policy: {kwargs['policy']}") from e
        for attr in ('owner', 'sender', 'recipient'):
            if attr in kwargs:
                kwargs[attr] = Address(kwargs[attr])

        if 'unlock_grant' in data:
            if not _is_uint(data['unlock_grant']) or data['unlock_grant'] < 1:
                raise MalformedEventError(f"Invalid unlock_grant: {data['unlock_grant']!r}")
            kwargs['unlock_grant'] = data['unlock_grant']

        return cls(seq=data['seq'], kind=kind, token_id=data['token_id'], **kwargs)


@dataclass(frozen=True)
class PostCapPath:
    """Static description of one post-cap destination path."""
    path: str
    kind: PolicyKind
    companion: str
    trigger: str
    use_case: str


POST_CAP_PATHS: Tuple[PostCapPath, ...] = (
    PostCapPath("Soulbound", PolicyKind.SOULBOUND_CONVERT, "ERC-5192", "k = L",
                "Credentials/ID-binding."),
    PostCapPath("Auto-burn", PolicyKind.AUTO_BURN, "ERC-5679", "k = L",
                "One-time consumables."),
    PostCapPath("Lock-release", PolicyKind.LOCK_AND_RELEASE, "ERC-6982", "k = L+oracle",
                "Subscriptions."),
    PostCapPath("Provenance", PolicyKind.PROVENANCE_FREEZE, "---", "k = L",
                "Collectibles and arts."),
)


def post_cap_paths() -> List[PostCapPath]:
    """Rows of the post-cap destination table, in display order."""
    return list(POST_CAP_PATHS)
