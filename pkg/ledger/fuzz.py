"""Randomized operation runner for the counted-transfer ledger.

Drives a population of tokens through seeded random operations and checks
after every step that:

    - capped tokens never exceed their limit and counts never decrease,
    - a transfer succeeds exactly when (L = 0 or k < L) and the ownership
      and zero-address preconditions hold,
    - every token's Transferred events equal its count and every cap reach
      produced exactly one PolicyTriggered event,
    - replaying each shard's log reproduces the live shard.

Operations are aimed mostly at tokens that can still move; a token that
can never move again is replaced by a freshly minted one so the live
population does not drain over a long run.

Tokens are sharded across independent ledgers by ``token_id % shards``.
The random stream does not depend on the shard count, so the report is
identical for any number of shards.
"""

import logging
import random
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, List

from ledger.errors import LedgerError
from ledger.eventlog import replay
from ledger.ledger import Ledger
from ledger.models import (
    ZERO_ADDRESS,
    Address,
    EventKind,
    PolicyKind,
    PostCapPolicy,
    TokenRecord,
    TokenStatus,
)

logger = logging.getLogger(__name__)

ADDRESS_POOL_SIZE = 50
MAX_REPORTED_VIOLATIONS = 20

# Share of operations aimed at an active token (or, for unlock, a locked one).
LIVE_PICK = 0.9

_POLICIES = (
    PostCapPolicy.soulbound(),
    PostCapPolicy.auto_burn(),
    PostCapPolicy.lock_and_release(3),
    PostCapPolicy.provenance_freeze(),
)

# operation name -> relative weight
_OPERATION_WEIGHTS = {
    'transfer': 70,
    'set_limit': 12,
    'unlock': 12,
    'apply_policy': 3,
    'burn': 1,
    'read': 2,
}


@dataclass
class FuzzReport:
    """Outcome of a fuzz run.

    Attributes:
        seed: Seed of the random stream.
        ops: Randomized operations executed after minting.
        tokens: Tokens minted up front.
        shards: Number of independent ledgers.
        replacements: Fresh tokens minted as others went terminal.
        transfers_ok: Successful transfers.
        transfers_rejected: Transfers the ledger refused.
        policy_triggers: PolicyTriggered events across all shards.
        events: Total events across all shards.
        safety_violations: Steps where k > L (L > 0) or k decreased.
        liveness_violations: Transfers whose outcome disagreed with the predicate.
        consistency_violations: Event/state mismatches found at the end.
        replay_mismatches: Shards whose replayed ledger differs from the live one.
        rejections: Refused operations by exception name.
        violations: First few violation messages.
    """
    seed: int
    ops: int
    tokens: int
    shards: int
    replacements: int = 0
    transfers_ok: int = 0
    transfers_rejected: int = 0
    policy_triggers: int = 0
    events: int = 0
    safety_violations: int = 0
    liveness_violations: int = 0
    consistency_violations: int = 0
    replay_mismatches: int = 0
    rejections: Dict[str, int] = field(default_factory=dict)
    violations: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return (
            self.safety_violations == 0
            and self.liveness_violations == 0
            and self.consistency_violations == 0
            and self.replay_mismatches == 0
        )

    def note(self, message: str) -> None:
        if len(self.violations) < MAX_REPORTED_VIOLATIONS:
            self.violations.append(message)
        logger.warning(message)


def transfer_should_succeed(record: TokenRecord, sender: Address, recipient: Address) -> bool:
    """Predicate a transfer outcome must match."""
    within_budget = record.transfer_limit == 0 or record.transfer_count < record.transfer_limit
    return (
        record.status is TokenStatus.ACTIVE
        and within_budget
        and sender == record.owner
        and sender != ZERO_ADDRESS
        and recipient != ZERO_ADDRESS
    )


class _Pool:
    """Token ids with O(1) add, discard and uniform choice in insertion-stable order."""

    def __init__(self) -> None:
        self.items: List[int] = []
        self.index: Dict[int, int] = {}

    def __contains__(self, token_id: int) -> bool:
        return token_id in self.index

    def __len__(self) -> int:
        return len(self.items)

    def add(self, token_id: int) -> None:
        if token_id not in self.index:
            self.index[token_id] = len(self.items)
            self.items.append(token_id)

    def discard(self, token_id: int) -> None:
        position = self.index.pop(token_id, None)
        if position is None:
            return
        last = self.items.pop()
        if last != token_id:
            self.items[position] = last
            self.index[last] = position


def is_terminal(record: TokenRecord) -> bool:
    """Whether no operation can ever move the token again."""
    if record.status is TokenStatus.BURNED:
        return True
    return record.status is TokenStatus.SETTLED and record.policy.kind is not PolicyKind.LOCK_AND_RELEASE


def address_pool(size: int = ADDRESS_POOL_SIZE) -> List[Address]:
    """Deterministic non-zero addresses ``0x00..01`` through ``size``."""
    return [Address(f"0x{i:040x}") for i in range(1, size + 1)]


class _FuzzRun:
    def __init__(
        self,
        seed: int,
        tokens: int,
        shards: int,
        max_limit: int,
        unbounded_fraction: float,
        allow_unbounded_reset: bool,
        report: FuzzReport,
    ):
        self.rng = random.Random(seed)
        self.addresses = address_pool()
        self.tokens = tokens
        self.shards = shards
        self.max_limit = max_limit
        self.unbounded_fraction = unbounded_fraction
        self.ledgers = [Ledger(allow_unbounded_reset) for _ in range(shards)]
        self.report = report
        self.last_count: Dict[int, int] = {}
        self.cap_reaches: Counter = Counter()
        self.rejections: Counter = Counter()
        self.minted: List[int] = []
        self.live = _Pool()
        self.locked = _Pool()
        self.next_id = tokens
        names = list(_OPERATION_WEIGHTS)
        self.operation_names = names
        self.operation_weights = [_OPERATION_WEIGHTS[name] for name in names]

    def ledger_for(self, token_id: int) -> Ledger:
        return self.ledgers[token_id % self.shards]

    def other_address(self, exclude: Address) -> Address:
        while True:
            address = self.rng.choice(self.addresses)
            if address != exclude:
                return address

    def mint_all(self) -> None:
        for token_id in range(self.tokens):
            self.mint(token_id)

    def mint(self, token_id: int) -> None:
        if self.rng.random() < self.unbounded_fraction:
            limit = 0
        else:
            limit = self.rng.randint(1, self.max_limit)
        policy = _POLICIES[token_id % len(_POLICIES)]
        owner = self.rng.choice(self.addresses)
        self.ledger_for(token_id).mint(owner, token_id, limit, policy)
        self.last_count[token_id] = 0
        self.minted.append(token_id)
        self.live.add(token_id)

    def regroup(self, record: TokenRecord) -> None:
        """Move a token between the live and locked pools after an operation.

        A token that can never move again is replaced by a freshly minted one.
        """
        token_id = record.token_id
        was_live = token_id in self.live
        self.live.discard(token_id)
        self.locked.discard(token_id)
        if record.status is TokenStatus.ACTIVE:
            self.live.add(token_id)
        elif not is_terminal(record):
            self.locked.add(token_id)
        elif was_live:
            self.mint(self.next_id)
            self.next_id += 1
            self.report.replacements += 1

    def pick_token(self, operation: str) -> int:
        pool = self.locked if operation == 'unlock' and self.locked else self.live
        if pool and self.rng.random() < LIVE_PICK:
            return self.rng.choice(pool.items)
        return self.rng.choice(self.minted)

    def step(self, index: int) -> None:
        name = self.rng.choices(self.operation_names, self.operation_weights)[0]
        token_id = self.pick_token(name)
        ledger = self.ledger_for(token_id)
        before = ledger.token(token_id)

        try:
            if name == 'transfer':
                self._transfer(ledger, before)
            elif name == 'set_limit':
                self._set_limit(ledger, before)
            elif name == 'unlock':
                grant = self.rng.choice([None, self.rng.randint(1, 5)])
                ledger.unlock(token_id, grant)
            elif name == 'apply_policy':
                ledger.apply_post_cap_policy(token_id)
            elif name == 'burn':
                caller = before.owner if self.rng.random() < 0.9 else self.other_address(before.owner)
                ledger.burn(caller, token_id)
            else:
                ledger.remaining(token_id)
        except LedgerError as e:
            self.rejections[type(e).__name__] += 1

        after = ledger.token(token_id)
        self._check_safety(index, after)
        self.regroup(after)

    def _transfer(self, ledger: Ledger, before: TokenRecord) -> None:
        roll = self.rng.random()
        if roll < 0.90:
            sender = before.owner
        elif roll < 0.97:
            sender = self.other_address(before.owner)
        else:
            sender = ZERO_ADDRESS
        recipient = ZERO_ADDRESS if self.rng.random() < 0.02 else self.other_address(sender)

        expected = transfer_should_succeed(before, sender, recipient)
        try:
            after = ledger.transfer(sender, recipient, before.token_id)
        except LedgerError:
            self.report.transfers_rejected += 1
            if expected:
                self.report.liveness_violations += 1
                self.report.note(f"transfer of token {before.token_id} refused in allowed state "
                                 f"(k={before.transfer_count}, L={before.transfer_limit})")
            raise

        self.report.transfers_ok += 1
        if not expected:
            self.report.liveness_violations += 1
            self.report.note(f"transfer of token {before.token_id} allowed in refused state "
                             f"(k={before.transfer_count}, L={before.transfer_limit}, "
                             f"status={before.status.value})")
        if after.transfer_count != before.transfer_count + 1 or after.owner != recipient:
            self.report.consistency_violations += 1
            self.report.note(f"transfer of token {before.token_id} did not move owner/count")
        if after.transfer_limit > 0 and after.transfer_count == after.transfer_limit:
            self.cap_reaches[before.token_id] += 1

    def _set_limit(self, ledger: Ledger, before: TokenRecord) -> None:
        roll = self.rng.random()
        if roll < 0.1:
            new_limit = 0
        else:
            low = max(before.transfer_count - 2, 1)
            new_limit = self.rng.randint(low, before.transfer_count + 5)
        caller = before.owner if self.rng.random() < 0.95 else self.other_address(before.owner)
        after = ledger.set_transfer_limit(caller, before.token_id, new_limit)
        if new_limit > 0 and after.transfer_count == new_limit:
            self.cap_reaches[before.token_id] += 1

    def _check_safety(self, index: int, record: TokenRecord) -> None:
        token_id = record.token_id
        if record.transfer_limit > 0 and record.transfer_count > record.transfer_limit:
            self.report.safety_violations += 1
            self.report.note(f"op {index}: token {token_id} has k={record.transfer_count} "
                             f"> L={record.transfer_limit}")
        if record.transfer_count < self.last_count[token_id]:
            self.report.safety_violations += 1
            self.report.note(f"op {index}: token {token_id} count decreased")
        self.last_count[token_id] = record.transfer_count

    def finish(self) -> None:
        transferred: Counter = Counter()
        triggered: Counter = Counter()
        for shard, ledger in enumerate(self.ledgers):
            for event in ledger.events:
                if event.kind is EventKind.TRANSFERRED:
                    transferred[event.token_id] += 1
                elif event.kind is EventKind.POLICY_TRIGGERED:
                    triggered[event.token_id] += 1
            self.report.events += len(ledger.events)

            if replay(ledger.events, ledger.allow_unbounded_reset) != ledger:
                self.report.replay_mismatches += 1
                self.report.note(f"shard {shard}: replayed state differs from live state")

        for token_id in self.minted:
            record = self.ledger_for(token_id).token(token_id)
            if transferred[token_id] != record.transfer_count:
                self.report.consistency_violations += 1
                self.report.note(f"token {token_id}: {transferred[token_id]} Transferred events "
                                 f"but k={record.transfer_count}")
            if triggered[token_id] != self.cap_reaches[token_id]:
                self.report.consistency_violations += 1
                self.report.note(f"token {token_id}: {triggered[token_id]} PolicyTriggered events "
                                 f"for {self.cap_reaches[token_id]} cap reaches")

        self.report.policy_triggers = sum(triggered.values())
        self.report.rejections = dict(sorted(self.rejections.items()))


def run_fuzz(
    ops: int = 100_000,
    tokens: int = 1_000,
    seed: int = 0,
    shards: int = 1,
    max_limit: int = 20,
    unbounded_fraction: float = 0.2,
    allow_unbounded_reset: bool = False,
) -> FuzzReport:
    """Run a seeded randomized operation history and check the ledger invariants.

    Args:
        ops: Randomized operations after the initial mints.
        tokens: Tokens to mint; limits are 0 (with ``unbounded_fraction``) or 1..max_limit.
        seed: Seed for ``random.Random``.
        shards: Independent ledgers the tokens are spread over.
        max_limit: Largest initial limit.
        unbounded_fraction: Share of tokens minted with L=0.
        allow_unbounded_reset: Ledger flag passed to every shard.

    Returns:
        FuzzReport with violation counts.
    """
    if tokens < 1 or shards < 1 or ops < 0 or max_limit < 1:
        raise LedgerError("tokens, shards and max_limit must be positive and ops non-negative")
    if not 0.0 <= unbounded_fraction <= 1.0:
        raise LedgerError(f"unbounded_fraction must be in [0, 1], got {unbounded_fraction}")

    report = FuzzReport(seed=seed, ops=ops, tokens=tokens, shards=shards)
    run = _FuzzRun(seed, tokens, shards, max_limit, unbounded_fraction,
                   allow_unbounded_reset, report)
    run.mint_all()
    for index in range(ops):
        run.step(index)
    run.finish()

    logger.info(
        f"Fuzz seed={seed}: {ops} ops over {tokens} tokens, "
        f"{report.transfers_ok} transfers ok, {report.transfers_rejected} rejected, "
        f"{report.policy_triggers} policy triggers, passed={report.passed}"
    )
    return report


@dataclass
class LivenessReport:
    """Outcome of the exhaustive small-state liveness check."""
    states: int = 0
    attempts: int = 0
    violations: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations


def enumerate_liveness(max_value: int = 6) -> LivenessReport:
    """Check the transfer predicate on every state with k, L <= max_value.

    Every (L, k, policy) state is built by real transfers, then each
    combination of owner/stranger/zero sender and stranger/zero recipient is
    attempted on a replayed copy of that state.

    Args:
        max_value: Largest k and L enumerated.

    Returns:
        LivenessReport listing every mismatch.
    """
    owner, stranger, third = address_pool(3)
    report = LivenessReport()

    for limit in range(max_value + 1):
        counts = range(limit + 1) if limit > 0 else range(max_value + 1)
        for count in counts:
            for policy in _POLICIES:
                base = Ledger()
                base.mint(owner, 1, limit, policy)
                holders = [owner, third]
                for i in range(count):
                    base.transfer(holders[i % 2], holders[(i + 1) % 2], 1)
                report.states += 1
                current = base.owner_of(1)

                for sender in (current, stranger, ZERO_ADDRESS):
                    for recipient in (stranger if sender != stranger else third, ZERO_ADDRESS):
                        ledger = replay(base.events)
                        before = ledger.token(1)
                        expected = transfer_should_succeed(before, sender, recipient)
                        try:
                            ledger.transfer(sender, recipient, 1)
                            succeeded = True
                        except LedgerError:
                            succeeded = False
                        report.attempts += 1
                        if succeeded != expected:
                            report.violations.append(
                                f"k={count} L={limit} policy={policy.kind.value} "
                                f"sender={sender} recipient={recipient}: "
                                f"expected {'success' if expected else 'failure'}"
                            )

    logger.info(f"Liveness enumeration: {report.states} states, {report.attempts} attempts, "
                f"{len(report.violations)} violations")
    return report

