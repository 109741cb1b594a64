"""Leverage bounds under transfer caps and cascading-loss simulation."""

from credit.cascade import CascadePoint, CascadeResult, cascade, cascade_curves
from credit.leverage import (
    VALUE_FLOOR,
    CoSimulation,
    CreditError,
    CreditParameterError,
    LeverageChain,
    LeverageRow,
    LeverageScenario,
    Position,
    build_chain,
    cosimulate,
    leverage_by_depth,
    max_depth,
    max_leverage,
    reduction_vs_unbounded,
    table7,
    unbounded_leverage,
)

__all__ = [
    'LeverageScenario',
    'LeverageChain',
    'Position',
    'LeverageRow',
    'CoSimulation',
    'VALUE_FLOOR',
    'max_depth',
    'max_leverage',
    'unbounded_leverage',
    'reduction_vs_unbounded',
    'build_chain',
    'table7',
    'leverage_by_depth',
    'cosimulate',
    'CascadeResult',
    'CascadePoint',
    'cascade',
    'cascade_curves',
    'CreditError',
    'CreditParameterError',
]
