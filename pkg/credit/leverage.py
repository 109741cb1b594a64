"""Recursive collateralization under transfer caps.

Each re-hypothecation cycle needs two native transfers (deposit into the
lending contract, then redeem), so a token with limit L supports at most
d_max = floor(L / 2) cycles. Borrowing LTV of each position's value and
re-collateralizing gives the truncated geometric leverage

    leverage(L) = sum_{i=0}^{d_max} LTV^i = (1 - LTV^(d_max + 1)) / (1 - LTV)
"""

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from ledger import Address, Ledger, LedgerError, address_pool

logger = logging.getLogger(__name__)

VALUE_FLOOR = 0.01


class CreditError(Exception):
    """Base exception for the leverage and cascade models."""
    pass


class CreditParameterError(CreditError):
    """Raised when a leverage or cascade parameter is out of range."""
    pass


@dataclass(frozen=True)
class LeverageScenario:
    """Parameters of a recursive borrowing chain.

    Attributes:
        limit: Transfer limit L; 0 is unbounded.
        ltv: Loan-to-value ratio in (0, 1).
        v0: Value of the first collateral position in ETH.
    """
    limit: int
    ltv: float = 0.7
    v0: float = 10.0

    def __post_init__(self) -> None:
        if isinstance(self.limit, bool) or not isinstance(self.limit, int) or self.limit < 0:
            raise CreditParameterError(f"limit must be a non-negative integer, got {self.limit!r}")
        if not 0.0 < self.ltv < 1.0:
            raise CreditParameterError(f"ltv must be in (0, 1), got {self.ltv}")
        if self.v0 <= 0:
            raise CreditParameterError(f"v0 must be positive, got {self.v0}")


@dataclass(frozen=True)
class Position:
    """One link of a leverage chain."""
    collateral_value: float
    debt: float


@dataclass
class LeverageChain:
    """Positions ordered from the original collateral outward.

    Attributes:
        positions: Position i has collateral V0 * LTV^i and debt LTV times that.
        ltv: Loan-to-value ratio that built the chain.
    """
    positions: List[Position] = field(default_factory=list)
    ltv: float = 0.7

    @property
    def depth(self) -> int:
        """Number of re-hypothecation cycles (positions beyond the first)."""
        return max(len(self.positions) - 1, 0)

    @property
    def exposure(self) -> float:
        return sum(p.collateral_value for p in self.positions)


def max_depth(limit: int) -> Optional[int]:
    """Maximum re-hypothecation depth floor(L / 2), or None when L = 0 (unbounded)."""
    if limit < 0:
        raise CreditParameterError(f"limit must be non-negative, got {limit}")
    if limit == 0:
        return None
    return limit // 2


def unbounded_leverage(ltv: float) -> float:
    return 1.0 / (1.0 - ltv)


def max_leverage(scenario: LeverageScenario) -> float:
    """Closed-form leverage multiplier for the scenario's depth bound."""
    depth = max_depth(scenario.limit)
    if depth is None:
        return unbounded_leverage(scenario.ltv)
    return (1.0 - scenario.ltv ** (depth + 1)) / (1.0 - scenario.ltv)


def reduction_vs_unbounded(scenario: LeverageScenario) -> float:
    """Leverage lost to the cap, as a percentage of the unbounded multiplier."""
    return 100.0 * (1.0 - max_leverage(scenario) / unbounded_leverage(scenario.ltv))


def build_chain(scenario: LeverageScenario, floor: float = VALUE_FLOOR) -> LeverageChain:
    """Expand the leverage chain position by position.

    The chain stops at d_max cycles or at the first position worth less
    than ``floor``, whichever comes first.
    """
    depth = max_depth(scenario.limit)
    chain = LeverageChain(ltv=scenario.ltv)
    collateral = scenario.v0
    while collateral >= floor:
        chain.positions.append(Position(collateral, scenario.ltv * collateral))
        if depth is not None and chain.depth >= depth:
            break
        collateral *= scenario.ltv
    return chain


@dataclass(frozen=True)
class LeverageRow:
    """One row of the leverage table."""
    limit: int
    max_depth: Optional[int]
    exposure: float
    leverage: float
    reduction: float


def table7(
    limits: Sequence[int] = (4, 6, 10, 20, 50),
    ltv: float = 0.7,
    v0: float = 10.0,
) -> List[LeverageRow]:
    """Depth, exposure, leverage and reduction for each transfer limit."""
    rows = []
    for limit in limits:
        scenario = LeverageScenario(limit, ltv, v0)
        leverage = max_leverage(scenario)
        rows.append(LeverageRow(
            limit=limit,
            max_depth=max_depth(limit),
            exposure=leverage * v0,
            leverage=leverage,
            reduction=reduction_vs_unbounded(scenario),
        ))
    return rows


def leverage_by_depth(ltv: float = 0.7, depth: int = 25) -> List[Tuple[int, float]]:
    """Cumulative leverage after each re-hypothecation depth 0..depth."""
    if not 0.0 < ltv < 1.0:
        raise CreditParameterError(f"ltv must be in (0, 1), got {ltv}")
    curve = []
    total = 0.0
    for d in range(depth + 1):
        total += ltv ** d
        curve.append((d, total))
    return curve


@dataclass
class CoSimulation:
    """Outcome of running a leverage chain against a real ledger token.

    Attributes:
        cycles: Deposit/redeem cycles completed.
        transfers: Transfers consumed on the ledger.
        refused: True when the ledger refused the next deposit.
        chain: Positions created by the completed cycles.
    """
    cycles: int
    transfers: int
    refused: bool
    chain: LeverageChain


def cosimulate(scenario: LeverageScenario, floor: float = VALUE_FLOOR) -> CoSimulation:
    """Run deposit/redeem cycles on a private ledger until the cap or the floor stops them.

    One token is minted to a borrower with limit L. Every cycle transfers it
    to a lending pool and back, opening the next position in the chain.
    """
    borrower, pool = address_pool(2)
    ledger = Ledger()
    token_id = 1
    ledger.mint(borrower, token_id, scenario.limit)

    chain = LeverageChain(ltv=scenario.ltv)
    chain.positions.append(Position(scenario.v0, scenario.ltv * scenario.v0))
    refused = False
    cycles = 0

    while True:
        collateral = scenario.v0 * scenario.ltv ** (cycles + 1)
        if collateral < floor:
            break
        try:
            _cycle(ledger, token_id, borrower, pool)
        except LedgerError as e:
            logger.debug(f"Ledger refused cycle {cycles + 1}: {e}")
            refused = True
            break
        cycles += 1
        chain.positions.append(Position(collateral, scenario.ltv * collateral))

    transfers = ledger.transfer_count_of(token_id)
    logger.info(f"Co-simulation L={scenario.limit}: {cycles} cycles, {transfers} transfers, "
                f"refused={refused}")
    return CoSimulation(cycles=cycles, transfers=transfers, refused=refused, chain=chain)


def _cycle(ledger: Ledger, token_id: int, borrower: Address, pool: Address) -> None:
    ledger.transfer(borrower, pool, token_id)
    ledger.transfer(pool, borrower, token_id)
