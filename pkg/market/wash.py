"""Wash-trading profitability in a cap-aware market.

An attacker buys a token at V_base, runs n self-dealing trades that each
cost g and consume one transfer, then sells at the inflated price. Buyers
observe the remaining budget and price the token at its concave fair value,
so the exit price is

    max_sell(n) = V_base * sqrt((L - n) / L) * (1 + alpha)

and the profit is

    profit_cap(n)   = max_sell(n) - V_base - n * g
    profit_nocap(n) = V_base * alpha - n * g
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from econ.premium import Power
from econ.valuation import value_at_remaining

logger = logging.getLogger(__name__)

# Fair value inside this module is always the concave square-root model.
FAIR_VALUE_MODEL = Power(0.5)

# (L, n) pairs of the wash-trading profitability table.
TABLE6_PAIRS: Tuple[Tuple[int, int], ...] = (
    (5, 1), (5, 3), (5, 5),
    (10, 3), (10, 5), (10, 10),
    (20, 5), (20, 9), (20, 15),
)


class MarketError(Exception):
    """Base exception for the wash-trading model."""
    pass


class MarketParameterError(MarketError):
    """Raised when a scenario parameter is out of range."""
    pass


class BudgetExceededError(MarketError):
    """Raised when more wash trades are requested than the cap allows."""

    def __init__(self, n: int, limit: int):
        self.n = n
        self.limit = limit
        super().__init__(f"{n} wash trades exceed the transfer limit {limit}")


@dataclass(frozen=True)
class WashScenario:
    """Parameters of a wash-trading attack.

    Attributes:
        limit: Transfer limit L (> 0).
        v_base: Acquisition price and base value in ETH.
        alpha: Artificial price inflation fraction.
        g: Cost per wash trade in ETH.
    """
    limit: int
    v_base: float = 10.0
    alpha: float = 0.3
    g: float = 0.005

    def __post_init__(self) -> None:
        if isinstance(self.limit, bool) or not isinstance(self.limit, int) or self.limit < 1:
            raise MarketParameterError(f"limit must be a positive integer, got {self.limit!r}")
        if self.v_base < 0:
            raise MarketParameterError(f"v_base must be non-negative, got {self.v_base}")
        if self.alpha < 0:
            raise MarketParameterError(f"alpha must be non-negative, got {self.alpha}")
        if self.g < 0:
            raise MarketParameterError(f"g must be non-negative, got {self.g}")


def _check_trades(n: int, scenario: WashScenario) -> None:
    if n < 0:
        raise MarketParameterError(f"n must be non-negative, got {n}")
    if n > scenario.limit:
        raise BudgetExceededError(n, scenario.limit)


def fair_value_after(n: int, scenario: WashScenario) -> float:
    """Concave fair value once n transfers have been consumed.

    Raises:
        BudgetExceededError: If n > L.
    """
    _check_trades(n, scenario)
    return value_at_remaining(FAIR_VALUE_MODEL, scenario.v_base, scenario.limit - n, scenario.limit)


def max_sell(n: int, scenario: WashScenario) -> float:
    """Best achievable exit price: fair value inflated by alpha."""
    return fair_value_after(n, scenario) * (1.0 + scenario.alpha)


def profit_cap(n: int, scenario: WashScenario) -> float:
    """Attacker profit after n wash trades in the cap-aware market.

    Raises:
        BudgetExceededError: If n > L.
    """
    return max_sell(n, scenario) - scenario.v_base - n * scenario.g


def profit_nocap(n: int, scenario: WashScenario) -> float:
    """Attacker profit after n wash trades without transfer caps."""
    if n < 0:
        raise MarketParameterError(f"n must be non-negative, got {n}")
    return scenario.v_base * scenario.alpha - n * scenario.g


def break_even(scenario: WashScenario) -> Optional[int]:
    """Smallest n in 1..L with profit_cap(n) <= 0, or None if never reached."""
    for n in range(1, scenario.limit + 1):
        if profit_cap(n, scenario) <= 0:
            return n
    return None


@dataclass(frozen=True)
class TrajectoryPoint:
    """Value and profit after n wash trades."""
    n: int
    fair_value: float
    max_sell: float
    profit_cap: float
    profit_nocap: float


def trajectory(scenario: WashScenario) -> List[TrajectoryPoint]:
    """Value degradation and profit for n = 0..L."""
    return [
        TrajectoryPoint(
            n=n,
            fair_value=fair_value_after(n, scenario),
            max_sell=max_sell(n, scenario),
            profit_cap=profit_cap(n, scenario),
            profit_nocap=profit_nocap(n, scenario),
        )
        for n in range(scenario.limit + 1)
    ]


@dataclass(frozen=True)
class WashRow:
    """One row of the wash-trading profitability table."""
    limit: int
    n: int
    profit_nocap: float
    fair_value: float
    max_sell: float
    profit_cap: float

    @property
    def deterred(self) -> bool:
        return self.profit_cap <= 0


def table6(
    pairs: Sequence[Tuple[int, int]] = TABLE6_PAIRS,
    v_base: float = 10.0,
    alpha: float = 0.3,
    g: float = 0.005,
) -> List[WashRow]:
    """Profitability of wash trading for selected (L, n) pairs."""
    rows = []
    for limit, n in pairs:
        scenario = WashScenario(limit, v_base, alpha, g)
        rows.append(WashRow(
            limit=limit,
            n=n,
            profit_nocap=profit_nocap(n, scenario),
            fair_value=fair_value_after(n, scenario),
            max_sell=max_sell(n, scenario),
            profit_cap=profit_cap(n, scenario),
        ))
    return rows


def break_even_by_limit(
    limits: Sequence[int] = (5, 10, 15, 20, 50),
    v_base: float = 10.0,
    alpha: float = 0.3,
    g: float = 0.005,
) -> List[Tuple[int, Optional[int]]]:
    """Break-even wash-trade count for each transfer limit."""
    result = []
    for limit in limits:
        n_star = break_even(WashScenario(limit, v_base, alpha, g))
        logger.debug(f"Break-even for L={limit}: {n_star}")
        result.append((limit, n_star))
    return result
