"""Cascading liquidations along a leverage chain.

Every position is marked down by the shock p. A position whose marked
value does not cover its debt is liquidated. A liquidation marks the next
position down by one extra penalty on top of the shock; the penalty does
not accumulate along a run of liquidations, and a survivor passes none on.
"""

import logging
import math
from dataclasses import dataclass
from typing import List, Sequence

from credit.leverage import CreditParameterError, LeverageChain, LeverageScenario, build_chain

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CascadeResult:
    """Outcome of a price shock.

    Attributes:
        cascade_depth: Number of liquidated positions.
        aggregate_loss: Sum of uncovered debt over liquidated positions (ETH).
    """
    cascade_depth: int
    aggregate_loss: float


def cascade(chain: LeverageChain, shock: float, penalty: float = 0.05) -> CascadeResult:
    """Apply a price shock to a leverage chain.

    A marked value exactly equal to the debt counts as liquidated.

    Args:
        chain: Positions to mark down.
        shock: Price shock p in [0, 1).
        penalty: Extra markdown of the position after a liquidated one, in [0, 1).

    Returns:
        CascadeResult with depth and aggregate loss.

    Raises:
        CreditParameterError: If shock or penalty is outside [0, 1).
    """
    if not 0.0 <= shock < 1.0:
        raise CreditParameterError(f"shock must be in [0, 1), got {shock}")
    if not 0.0 <= penalty < 1.0:
        raise CreditParameterError(f"penalty must be in [0, 1), got {penalty}")

    depth = 0
    loss = 0.0
    contagion = 0.0
    for position in chain.positions:
        markdown = min(1.0, shock + contagion)
        marked = position.collateral_value * (1.0 - markdown)
        if marked < position.debt or math.isclose(marked, position.debt, rel_tol=1e-9, abs_tol=1e-12):
            depth += 1
            loss += max(position.debt - marked, 0.0)
            contagion = penalty
        else:
            contagion = 0.0
    return CascadeResult(cascade_depth=depth, aggregate_loss=loss)


@dataclass(frozen=True)
class CascadePoint:
    """Cascade outcome for one (L, p) pair."""
    limit: int
    shock: float
    cascade_depth: int
    aggregate_loss: float


def cascade_curves(
    limits: Sequence[int] = (10, 50),
    shocks: Sequence[float] = (0.1, 0.2, 0.3, 0.4, 0.5),
    ltv: float = 0.7,
    v0: float = 10.0,
    penalty: float = 0.05,
) -> List[CascadePoint]:
    """Cascade depth and loss over a grid of limits and shocks."""
    points = []
    for limit in limits:
        chain = build_chain(LeverageScenario(limit, ltv, v0))
        for shock in shocks:
            result = cascade(chain, shock, penalty)
            points.append(CascadePoint(limit, shock, result.cascade_depth, result.aggregate_loss))
        logger.debug(f"Cascade curve for L={limit}: chain depth {chain.depth}")
    return points
