"""Helpers shared by the ledger tests."""

from typing import List

from ledger import Address, Ledger


def walk(ledger: Ledger, token_id: int, holders: List[Address], steps: int) -> None:
    """Transfer a token ``steps`` times, always to a holder other than the current owner."""
    for _ in range(steps):
        owner = ledger.owner_of(token_id)
        recipient = next(h for h in holders if h != owner)
        ledger.transfer(owner, recipient, token_id)
