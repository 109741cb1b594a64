"""Per-operation gas constants for ERC-721 and ERC-7634.

The values are model constants taken from published measurements; nothing
here talks to an EVM.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Mapping, Optional, Tuple

logger = logging.getLogger(__name__)


class CostModelError(Exception):
    """Base exception for the gas and bypass cost models."""
    pass


class CostParameterError(CostModelError):
    """Raised when a gas constant or price is out of range."""
    pass


class UnknownOperationError(CostModelError):
    """Raised when an operation is not in the gas table."""
    pass


class NotApplicableError(CostModelError):
    """Raised when an operation has no ERC-721 counterpart."""
    pass


class GasOperation(Enum):
    """Operations priced in the gas table."""
    MINT = "mint"
    MINT_WITH_LIMIT = "mint_with_limit"
    TRANSFER_FIRST = "transfer_first"
    TRANSFER_NEAR_CAP = "transfer_near_cap"
    APPROVE_TRANSFER = "approve_transfer"
    SET_LIMIT = "set_limit"

    @property
    def label(self) -> str:
        return _LABELS[self]


_LABELS = {
    GasOperation.MINT: "Mint",
    GasOperation.MINT_WITH_LIMIT: "Mint + setLimit",
    GasOperation.TRANSFER_FIRST: "Transfer (first)",
    GasOperation.TRANSFER_NEAR_CAP: "Transfer (near cap)",
    GasOperation.APPROVE_TRANSFER: "Approve + transfer",
    GasOperation.SET_LIMIT: "setTransferLimit",
}

_TRANSFERS = (GasOperation.TRANSFER_FIRST, GasOperation.TRANSFER_NEAR_CAP, GasOperation.APPROVE_TRANSFER)


def _default_erc721() -> Dict[GasOperation, Optional[int]]:
    return {
        GasOperation.MINT: 51_316,
        GasOperation.MINT_WITH_LIMIT: None,
        GasOperation.TRANSFER_FIRST: 48_947,
        GasOperation.TRANSFER_NEAR_CAP: 48_947,
        GasOperation.APPROVE_TRANSFER: 73_221,
        GasOperation.SET_LIMIT: None,
    }


def _default_erc7634() -> Dict[GasOperation, int]:
    return {
        GasOperation.MINT: 51_316,
        GasOperation.MINT_WITH_LIMIT: 74_812,
        GasOperation.TRANSFER_FIRST: 54_283,
        GasOperation.TRANSFER_NEAR_CAP: 54_471,
        GasOperation.APPROVE_TRANSFER: 78_557,
        GasOperation.SET_LIMIT: 23_496,
    }


def _to_operation(operation: Any) -> GasOperation:
    if isinstance(operation, GasOperation):
        return operation
    try:
        return GasOperation(operation)
    except ValueError:
        raise UnknownOperationError(f"Unknown gas operation: {operation!r}") from None


@dataclass(frozen=True)
class GasTable:
    """Gas per operation for both token standards.

    ``None`` in ``erc721`` marks an operation without an ERC-721 counterpart.

    Attributes:
        erc721: Operation -> gas for plain ERC-721.
        erc7634: Operation -> gas for ERC-7634.
    """
    erc721: Mapping[GasOperation, Optional[int]] = field(default_factory=_default_erc721)
    erc7634: Mapping[GasOperation, int] = field(default_factory=_default_erc7634)

    def __post_init__(self) -> None:
        for standard, table in (("ERC-721", self.erc721), ("ERC-7634", self.erc7634)):
            for operation, gas in table.items():
                if gas is None and table is self.erc721:
                    continue
                if gas is None or gas <= 0:
                    raise CostParameterError(f"{standard} gas for {operation.value} must be positive, got {gas}")
        for operation in _TRANSFERS:
            base = self.erc721.get(operation)
            counted = self.erc7634.get(operation)
            if base is not None and counted is not None and counted < base:
                raise CostParameterError(
                    f"ERC-7634 {operation.value} ({counted}) cheaper than ERC-721 ({base})"
                )

    def gas(self, operation: Any) -> Tuple[Optional[int], int]:
        """(ERC-721 gas, ERC-7634 gas) for one operation.

        Raises:
            UnknownOperationError: If the operation is not priced.
        """
        op = _to_operation(operation)
        if op not in self.erc7634:
            raise UnknownOperationError(f"Operation not in gas table: {op.value}")
        return self.erc721.get(op), self.erc7634[op]

    @classmethod
    def from_dict(cls, data: Mapping[str, Mapping[str, Optional[int]]]) -> 'GasTable':
        """Build a table from ``{'erc721': {...}, 'erc7634': {...}}``.

        Operations missing from ``data`` keep their default gas.

        Raises:
            UnknownOperationError: On an unknown operation name.
            CostParameterError: On an unknown standard or a non-integer value.
        """
        erc721 = _default_erc721()
        erc7634 = _default_erc7634()
        targets: Dict[str, Dict[GasOperation, Any]] = {'erc721': erc721, 'erc7634': erc7634}
        for standard, overrides in (data or {}).items():
            if standard not in targets:
                raise CostParameterError(f"Unknown token standard in gas table: {standard}")
            for name, gas in (overrides or {}).items():
                if gas is not None and (isinstance(gas, bool) or not isinstance(gas, int)):
                    raise CostParameterError(f"Gas for {standard}.{name} must be an integer, got {gas!r}")
                targets[standard][_to_operation(name)] = gas
        return cls(erc721=erc721, erc7634=erc7634)

    def to_dict(self) -> Dict[str, Dict[str, Optional[int]]]:
        return {
            'erc721': {op.value: gas for op, gas in self.erc721.items()},
            'erc7634': {op.value: gas for op, gas in self.erc7634.items()},
        }


def overhead(table: GasTable, operation: Any) -> float:
    """ERC-7634 overhead over ERC-721 as a percentage.

    Raises:
        UnknownOperationError: If the operation is not in the table.
        NotApplicableError: If ERC-721 has no such operation.
    """
    base, counted = table.gas(operation)
    if base is None:
        raise NotApplicableError(f"No ERC-721 counterpart for {_to_operation(operation).value}")
    return (counted - base) / base * 100.0


@dataclass(frozen=True)
class GasRow:
    """One gas table row; ``overhead`` is None where it does not apply."""
    operation: GasOperation
    erc721: Optional[int]
    erc7634: int
    overhead: Optional[float]


def table8(table: Optional[GasTable] = None) -> List[GasRow]:
    """Gas comparison rows in operation order."""
    table = table or GasTable()
    rows = []
    for operation in GasOperation:
        if operation not in table.erc7634:
            continue
        base, counted = table.gas(operation)
        pct = overhead(table, operation) if base is not None else None
        rows.append(GasRow(operation, base, counted, pct))
    return rows
