"""Unit tests for the counted-transfer ledger."""

import pytest

from ledger import (
    ZERO_ADDRESS,
    CapNotReachedError,
    DuplicateTokenError,
    EventKind,
    InvalidGrantError,
    Ledger,
    LedgerError,
    LimitBelowCountError,
    NotAuthorizedError,
    NotLockedError,
    NotOwnerError,
    PolicyKind,
    PostCapPolicy,
    TokenNotActiveError,
    TokenStatus,
    TransferLimitReachedError,
    UnboundedResetForbiddenError,
    UnknownTokenError,
    ZeroAddressError,
    ZeroAddressOwnerError,
)
from tests.helpers import walk


class TestMint:
    def test_capped_mint(self, ledger, alice):
        record = ledger.mint(alice, 1, 10)
        assert (record.transfer_count, record.transfer_limit) == (0, 10)
        assert record.status is TokenStatus.ACTIVE
        assert record.owner == alice

    def test_unbounded_mint(self, ledger, alice):
        record = ledger.mint(alice, 2, 0)
        assert record.transfer_limit == 0
        assert ledger.remaining(2) is None

    def test_default_policy_is_provenance_freeze(self, ledger, alice):
        assert ledger.mint(alice, 1, 3).policy.kind is PolicyKind.PROVENANCE_FREEZE

    def test_duplicate_token(self, ledger, alice, bob):
        ledger.mint(alice, 1, 10)
        with pytest.raises(DuplicateTokenError):
            ledger.mint(bob, 1, 5)
        assert ledger.owner_of(1) == alice

    def test_zero_owner(self, ledger):
        with pytest.raises(ZeroAddressOwnerError):
            ledger.mint(ZERO_ADDRESS, 1, 10)
        assert 1 not in ledger

    def test_negative_limit_rejected(self, ledger, alice):
        with pytest.raises(LedgerError):
            ledger.mint(alice, 1, -1)

    def test_mint_emits_only_minted(self, ledger, alice):
        ledger.mint(alice, 1, 10)
        assert [event.kind for event in ledger.events] == [EventKind.MINTED]
        assert ledger.events[0].seq == 0


class TestTransfer:
    def test_single_budget(self, ledger, alice, bob):
        ledger.mint(alice, 1, 1)
        record = ledger.transfer(alice, bob, 1)
        assert record.transfer_count == 1
        assert record.owner == bob
        with pytest.raises(TransferLimitReachedError, match="transfer limit reached"):
            ledger.transfer(bob, alice, 1)

    def test_unbounded_token_keeps_moving(self, ledger, addresses):
        ledger.mint(addresses[0], 1, 0)
        walk(ledger, 1, addresses, 8)
        assert ledger.transfer_count_of(1) == 8
        assert ledger.status_of(1) is TokenStatus.ACTIVE

    def test_exactly_limit_transfers(self, ledger, addresses):
        ledger.mint(addresses[0], 1, 10)
        walk(ledger, 1, addresses, 10)
        assert ledger.transfer_count_of(1) == 10
        owner = ledger.owner_of(1)
        with pytest.raises(TransferLimitReachedError):
            ledger.transfer(owner, addresses[3] if owner != addresses[3] else addresses[0], 1)
        assert ledger.transfer_count_of(1) == 10

    def test_event_order(self, ledger, alice, bob):
        ledger.mint(alice, 1, 5)
        ledger.transfer(alice, bob, 1)
        transferred, increased = ledger.events[1:]
        assert transferred.kind is EventKind.TRANSFERRED
        assert (transferred.sender, transferred.recipient) == (alice, bob)
        assert increased.kind is EventKind.TRANSFER_COUNT_INCREASED
        assert increased.count == 1

    def test_cap_reach_triggers_policy_in_same_operation(self, ledger, alice, bob):
        ledger.mint(alice, 1, 1)
        ledger.transfer(alice, bob, 1)
        kinds = [event.kind for event in ledger.events]
        assert kinds == [
            EventKind.MINTED,
            EventKind.TRANSFERRED,
            EventKind.TRANSFER_COUNT_INCREASED,
            EventKind.POLICY_TRIGGERED,
        ]
        assert ledger.status_of(1) is TokenStatus.SETTLED

    def test_not_owner(self, ledger, alice, bob, carol):
        ledger.mint(alice, 1, 5)
        with pytest.raises(NotOwnerError):
            ledger.transfer(bob, carol, 1)
        assert ledger.transfer_count_of(1) == 0

    @pytest.mark.parametrize("side", ["sender", "recipient"])
    def test_zero_address(self, ledger, alice, bob, side):
        ledger.mint(alice, 1, 5)
        sender, recipient = (ZERO_ADDRESS, bob) if side == "sender" else (alice, ZERO_ADDRESS)
        with pytest.raises(ZeroAddressError):
            ledger.transfer(sender, recipient, 1)

    def test_unknown_token(self, ledger, alice, bob):
        with pytest.raises(UnknownTokenError):
            ledger.transfer(alice, bob, 99)

    def test_limit_check_precedes_ownership(self, ledger, alice, bob, carol):
        ledger.mint(alice, 1, 1)
        ledger.transfer(alice, bob, 1)
        with pytest.raises(TransferLimitReachedError):
            ledger.transfer(carol, alice, 1)

    def test_rejected_transfer_leaves_log_untouched(self, ledger, alice, bob):
        ledger.mint(alice, 1, 1)
        ledger.transfer(alice, bob, 1)
        before = ledger.events
        with pytest.raises(TransferLimitReachedError):
            ledger.transfer(bob, alice, 1)
        assert ledger.events == before

    def test_sequence_numbers_strictly_increase(self, ledger, addresses):
        ledger.mint(addresses[0], 1, 0)
        ledger.mint(addresses[1], 2, 3)
        walk(ledger, 1, addresses, 5)
        walk(ledger, 2, addresses, 3)
        seqs = [event.seq for event in ledger.events]
        assert seqs == sorted(set(seqs))


class TestReads:
    def test_counts_after_three_transfers(self, ledger, addresses):
        ledger.mint(addresses[0], 1, 10)
        walk(ledger, 1, addresses, 3)
        assert ledger.transfer_count_of(1) == 3
        assert ledger.transfer_limit_of(1) == 10
        assert ledger.remaining(1) == 7

    def test_burned_token_still_readable(self, ledger, addresses):
        ledger.mint(addresses[0], 1, 10)
        walk(ledger, 1, addresses, 4)
        ledger.burn(ledger.owner_of(1), 1)
        assert ledger.transfer_count_of(1) == 4
        assert ledger.transfer_limit_of(1) == 10
        assert ledger.remaining(1) == 6

    def test_unknown_token_reads(self, ledger):
        for read in (ledger.transfer_count_of, ledger.transfer_limit_of, ledger.remaining):
            with pytest.raises(UnknownTokenError):
                read(5)

    def test_token_returns_copy(self, ledger, alice, bob):
        ledger.mint(alice, 1, 5)
        record = ledger.token(1)
        record.owner = bob
        assert ledger.owner_of(1) == alice


class TestSetTransferLimit:
    @pytest.fixture
    def worn(self, ledger, addresses):
        """Token 1 with k=3, L=5."""
        ledger.mint(addresses[0], 1, 5)
        walk(ledger, 1, addresses, 3)
        return ledger

    def test_raise_limit(self, worn):
        owner = worn.owner_of(1)
        record = worn.set_transfer_limit(owner, 1, 10)
        assert (record.transfer_count, record.transfer_limit) == (3, 10)
        assert worn.events[-1].kind is EventKind.TRANSFER_LIMIT_UPDATED
        assert worn.events[-1].limit == 10

    def test_below_count(self, worn):
        with pytest.raises(LimitBelowCountError):
            worn.set_transfer_limit(worn.owner_of(1), 1, 2)
        assert worn.transfer_limit_of(1) == 5

    def test_equal_to_count_caps_immediately(self, worn, addresses):
        owner = worn.owner_of(1)
        record = worn.set_transfer_limit(owner, 1, 3)
        assert record.transfer_limit == 3
        assert record.status is TokenStatus.SETTLED
        assert worn.events[-1].kind is EventKind.POLICY_TRIGGERED
        with pytest.raises(TransferLimitReachedError):
            worn.transfer(owner, next(a for a in addresses if a != owner), 1)

    def test_not_owner(self, worn, addresses):
        stranger = next(a for a in addresses if a != worn.owner_of(1))
        with pytest.raises(NotAuthorizedError):
            worn.set_transfer_limit(stranger, 1, 10)

    def test_unbounded_reset_forbidden_by_default(self, worn):
        with pytest.raises(UnboundedResetForbiddenError):
            worn.set_transfer_limit(worn.owner_of(1), 1, 0)

    def test_unbounded_reset_with_flag(self, alice, bob):
        ledger = Ledger(allow_unbounded_reset=True)
        ledger.mint(alice, 1, 2)
        ledger.transfer(alice, bob, 1)
        ledger.set_transfer_limit(bob, 1, 0)
        assert ledger.remaining(1) is None

    def test_unbounded_token_may_stay_unbounded(self, ledger, alice):
        ledger.mint(alice, 1, 0)
        assert ledger.set_transfer_limit(alice, 1, 0).transfer_limit == 0

    def test_settled_token(self, ledger, alice, bob):
        ledger.mint(alice, 1, 1)
        ledger.transfer(alice, bob, 1)
        with pytest.raises(TokenNotActiveError):
            ledger.set_transfer_limit(bob, 1, 5)


class TestBurn:
    def test_burn_keeps_count(self, ledger, addresses):
        ledger.mint(addresses[0], 1, 10)
        walk(ledger, 1, addresses, 4)
        ledger.burn(ledger.owner_of(1), 1)
        assert ledger.status_of(1) is TokenStatus.BURNED
        assert ledger.transfer_count_of(1) == 4
        assert ledger.events[-1].kind is EventKind.BURNED

    def test_mint_then_burn_is_count_neutral(self, ledger, alice):
        ledger.mint(alice, 1, 10)
        ledger.burn(alice, 1)
        assert ledger.transfer_count_of(1) == 0
        kinds = [event.kind for event in ledger.events]
        assert EventKind.TRANSFER_COUNT_INCREASED not in kinds

    def test_transfer_after_burn(self, ledger, alice, bob):
        ledger.mint(alice, 1, 10)
        ledger.burn(alice, 1)
        with pytest.raises(TokenNotActiveError):
            ledger.transfer(alice, bob, 1)

    def test_burn_twice(self, ledger, alice):
        ledger.mint(alice, 1, 10)
        ledger.burn(alice, 1)
        with pytest.raises(TokenNotActiveError):
            ledger.burn(alice, 1)

    def test_burn_by_stranger(self, ledger, alice, bob):
        ledger.mint(alice, 1, 10)
        with pytest.raises(NotAuthorizedError):
            ledger.burn(bob, 1)


class TestPostCapPolicies:
    def _exhaust(self, ledger, addresses, policy, limit=5):
        ledger.mint(addresses[0], 1, limit, policy)
        walk(ledger, 1, addresses, limit)

    def test_auto_burn(self, ledger, addresses):
        self._exhaust(ledger, addresses, PostCapPolicy.auto_burn())
        assert ledger.status_of(1) is TokenStatus.BURNED
        assert ledger.transfer_count_of(1) == 5

    def test_soulbound(self, ledger, addresses):
        self._exhaust(ledger, addresses, PostCapPolicy.soulbound())
        owner = ledger.owner_of(1)
        assert ledger.status_of(1) is TokenStatus.SETTLED
        with pytest.raises(TransferLimitReachedError):
            ledger.transfer(owner, next(a for a in addresses if a != owner), 1)

    def test_provenance_freeze_keeps_exactly_limit_transfers(self, ledger, addresses):
        self._exhaust(ledger, addresses, PostCapPolicy.provenance_freeze())
        assert ledger.status_of(1) is TokenStatus.SETTLED
        transferred = [e for e in ledger.events if e.kind is EventKind.TRANSFERRED]
        assert len(transferred) == 5

    def test_exactly_one_policy_event(self, ledger, addresses):
        self._exhaust(ledger, addresses, PostCapPolicy.soulbound())
        triggered = [e for e in ledger.events if e.kind is EventKind.POLICY_TRIGGERED]
        assert len(triggered) == 1
        assert triggered[0].policy is PolicyKind.SOULBOUND_CONVERT

    def test_lock_and_release(self, ledger, addresses):
        self._exhaust(ledger, addresses, PostCapPolicy.lock_and_release())
        assert ledger.status_of(1) is TokenStatus.SETTLED
        record = ledger.unlock(1, 3)
        assert record.status is TokenStatus.ACTIVE
        assert record.transfer_limit == 8
        assert ledger.remaining(1) == 3
        assert [e.kind for e in ledger.events[-2:]] == [
            EventKind.RELEASED,
            EventKind.TRANSFER_LIMIT_UPDATED,
        ]

    def test_unlock_uses_default_grant(self, ledger, addresses):
        self._exhaust(ledger, addresses, PostCapPolicy.lock_and_release(2))
        assert ledger.unlock(1).transfer_limit == 7

    def test_released_token_locks_again(self, ledger, addresses):
        self._exhaust(ledger, addresses, PostCapPolicy.lock_and_release(1))
        ledger.unlock(1)
        walk(ledger, 1, addresses, 1)
        assert ledger.status_of(1) is TokenStatus.SETTLED
        triggered = [e for e in ledger.events if e.kind is EventKind.POLICY_TRIGGERED]
        assert len(triggered) == 2

    def test_unlock_without_grant(self, ledger, addresses):
        self._exhaust(ledger, addresses, PostCapPolicy.lock_and_release())
        with pytest.raises(InvalidGrantError):
            ledger.unlock(1)

    @pytest.mark.parametrize("grant", [0, -2])
    def test_unlock_bad_grant(self, ledger, addresses, grant):
        self._exhaust(ledger, addresses, PostCapPolicy.lock_and_release())
        with pytest.raises(InvalidGrantError):
            ledger.unlock(1, grant)

    def test_unlock_requires_lock_policy(self, ledger, addresses):
        self._exhaust(ledger, addresses, PostCapPolicy.provenance_freeze())
        with pytest.raises(NotLockedError):
            ledger.unlock(1, 3)

    def test_unlock_active_token(self, ledger, alice):
        ledger.mint(alice, 1, 5, PostCapPolicy.lock_and_release(2))
        with pytest.raises(NotLockedError):
            ledger.unlock(1)

    def test_apply_before_cap(self, ledger, alice):
        ledger.mint(alice, 1, 5)
        with pytest.raises(CapNotReachedError):
            ledger.apply_post_cap_policy(1)

    def test_apply_on_unbounded(self, ledger, alice):
        ledger.mint(alice, 1, 0)
        with pytest.raises(CapNotReachedError):
            ledger.apply_post_cap_policy(1)

    def test_apply_after_eager_trigger(self, ledger, addresses):
        self._exhaust(ledger, addresses, PostCapPolicy.soulbound())
        with pytest.raises(TokenNotActiveError):
            ledger.apply_post_cap_policy(1)


class TestPostCapPolicyModel:
    def test_grant_only_for_lock_and_release(self):
        with pytest.raises(InvalidGrantError):
            PostCapPolicy(PolicyKind.AUTO_BURN, 3)

    def test_grant_must_be_positive(self):
        with pytest.raises(InvalidGrantError):
            PostCapPolicy.lock_and_release(0)

    def test_constructors(self):
        assert PostCapPolicy.soulbound().kind is PolicyKind.SOULBOUND_CONVERT
        assert PostCapPolicy.auto_burn().kind is PolicyKind.AUTO_BURN
        assert PostCapPolicy.lock_and_release(4).unlock_grant == 4
        assert PostCapPolicy.provenance_freeze().kind is PolicyKind.PROVENANCE_FREEZE
