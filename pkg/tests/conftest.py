"""Shared fixtures."""

from typing import List

import pytest

from ledger import Address, Ledger, address_pool


@pytest.fixture
def addresses() -> List[Address]:
    return address_pool(4)


@pytest.fixture
def alice(addresses: List[Address]) -> Address:
    return addresses[0]


@pytest.fixture
def bob(addresses: List[Address]) -> Address:
    return addresses[1]


@pytest.fixture
def carol(addresses: List[Address]) -> Address:
    return addresses[2]


@pytest.fixture
def ledger() -> Ledger:
    return Ledger()
