"""Tests for the randomized operation runner and liveness enumeration."""

import pytest

from ledger import (
    ZERO_ADDRESS,
    LedgerError,
    PolicyKind,
    PostCapPolicy,
    TokenRecord,
    TokenStatus,
    address_pool,
    enumerate_liveness,
    is_terminal,
    post_cap_paths,
    run_fuzz,
    transfer_should_succeed,
)


def test_small_run_passes():
    report = run_fuzz(ops=2_000, tokens=50, seed=7)
    assert report.passed, report.violations
    assert report.transfers_ok > 0
    assert report.transfers_rejected > 0
    assert report.policy_triggers > 0


def test_runs_are_deterministic():
    first = run_fuzz(ops=1_000, tokens=30, seed=42)
    second = run_fuzz(ops=1_000, tokens=30, seed=42)
    assert first == second


def test_different_seeds_differ():
    first = run_fuzz(ops=1_000, tokens=30, seed=1)
    second = run_fuzz(ops=1_000, tokens=30, seed=2)
    assert first.events != second.events or first.transfers_ok != second.transfers_ok


def test_sharded_run_passes():
    report = run_fuzz(ops=1_000, tokens=40, seed=3, shards=4)
    assert report.passed
    assert report.shards == 4


def test_permissive_reset_run_passes():
    report = run_fuzz(ops=1_000, tokens=30, seed=5, allow_unbounded_reset=True)
    assert report.passed


def test_terminal_tokens_are_replaced():
    report = run_fuzz(ops=4_000, tokens=20, seed=7)
    assert report.passed, report.violations
    assert report.replacements > 0
    assert report.transfers_ok > report.rejections.get('TokenNotActiveError', 0)


def test_replacement_is_shard_independent():
    single = run_fuzz(ops=2_000, tokens=20, seed=11, shards=1)
    sharded = run_fuzz(ops=2_000, tokens=20, seed=11, shards=3)
    assert single.replacements == sharded.replacements
    assert single.transfers_ok == sharded.transfers_ok


@pytest.mark.parametrize("kwargs", [
    {'tokens': 0},
    {'shards': 0},
    {'ops': -1},
    {'max_limit': 0},
    {'unbounded_fraction': 1.5},
])
def test_invalid_parameters(kwargs):
    with pytest.raises(LedgerError):
        run_fuzz(**kwargs)


def test_liveness_enumeration_is_clean():
    report = enumerate_liveness(6)
    assert report.passed, report.violations[:5]
    assert report.states > 0
    assert report.attempts == report.states * 6


def test_liveness_smaller_bound():
    report = enumerate_liveness(2)
    assert report.passed
    assert report.states < enumerate_liveness(3).states


class TestTransferPredicate:
    owner, other = address_pool(2)

    def _record(self, count, limit, status=TokenStatus.ACTIVE):
        return TokenRecord(token_id=1, owner=self.owner, transfer_count=count,
                           transfer_limit=limit, status=status)

    def test_within_budget(self):
        assert transfer_should_succeed(self._record(4, 5), self.owner, self.other)

    def test_at_budget(self):
        assert not transfer_should_succeed(self._record(5, 5), self.owner, self.other)

    def test_unbounded(self):
        assert transfer_should_succeed(self._record(7, 0), self.owner, self.other)

    def test_wrong_sender(self):
        assert not transfer_should_succeed(self._record(0, 5), self.other, self.owner)

    def test_zero_recipient(self):
        assert not transfer_should_succeed(self._record(0, 5), self.owner, ZERO_ADDRESS)

    def test_settled(self):
        record = self._record(2, 5, TokenStatus.SETTLED)
        assert not transfer_should_succeed(record, self.owner, self.other)


def test_post_cap_paths_cover_every_policy():
    paths = post_cap_paths()
    assert [p.path for p in paths] == ["Soulbound", "Auto-burn", "Lock-release", "Provenance"]
    assert {p.kind for p in paths} == set(PolicyKind)


class TestTerminalStates:
    owner, = address_pool(1)

    def _record(self, status, policy):
        return TokenRecord(token_id=1, owner=self.owner, transfer_count=3,
                           transfer_limit=3, status=status, policy=policy)

    def test_burned(self):
        assert is_terminal(self._record(TokenStatus.BURNED, PostCapPolicy.auto_burn()))

    @pytest.mark.parametrize("policy", [PostCapPolicy.soulbound(), PostCapPolicy.provenance_freeze()])
    def test_settled_for_good(self, policy):
        assert is_terminal(self._record(TokenStatus.SETTLED, policy))

    def test_settled_awaiting_unlock(self):
        assert not is_terminal(self._record(TokenStatus.SETTLED, PostCapPolicy.lock_and_release()))

    def test_active(self):
        assert not is_terminal(self._record(TokenStatus.ACTIVE, PostCapPolicy.soulbound()))
