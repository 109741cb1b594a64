"""Cap-aware wash-trading profitability model."""

from market.wash import (
    TABLE6_PAIRS,
    BudgetExceededError,
    MarketError,
    MarketParameterError,
    TrajectoryPoint,
    WashRow,
    WashScenario,
    break_even,
    break_even_by_limit,
    fair_value_after,
    max_sell,
    profit_cap,
    profit_nocap,
    table6,
    trajectory,
)

__all__ = [
    'WashScenario',
    'TrajectoryPoint',
    'WashRow',
    'TABLE6_PAIRS',
    'fair_value_after',
    'max_sell',
    'profit_cap',
    'profit_nocap',
    'break_even',
    'trajectory',
    'table6',
    'break_even_by_limit',
    'MarketError',
    'MarketParameterError',
    'BudgetExceededError',
]
