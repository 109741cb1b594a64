"""Mobility-premium valuation and marginal mobility cost."""

from econ.premium import (
    DomainError,
    EconError,
    EconParameterError,
    Linear,
    NoRemainingBudgetError,
    Power,
    PremiumModel,
    Threshold,
    UnboundedTokenError,
    create_premium_model,
    default_models,
)
from econ.valuation import (
    MARGINAL_COST_STAGES,
    VALUATION_RATIOS,
    MarginalCostRow,
    ValuationInput,
    ValuationRow,
    concave_across_limits,
    marginal_cost,
    marginal_cost_curve,
    table4,
    table5,
    value,
    value_at_remaining,
    value_curve,
)

__all__ = [
    'PremiumModel',
    'Linear',
    'Power',
    'Threshold',
    'create_premium_model',
    'default_models',
    'ValuationInput',
    'ValuationRow',
    'MarginalCostRow',
    'VALUATION_RATIOS',
    'MARGINAL_COST_STAGES',
    'value',
    'value_at_remaining',
    'marginal_cost',
    'table4',
    'table5',
    'value_curve',
    'concave_across_limits',
    'marginal_cost_curve',
    'EconError',
    'EconParameterError',
    'DomainError',
    'NoRemainingBudgetError',
    'UnboundedTokenError',
]
