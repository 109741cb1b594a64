"""Gas overhead, wrapper-bypass break-even and mitigation trade-offs."""

from costs.bypass import (
    IMPLIED_ETH_PRICE_USD,
    BypassCost,
    BypassParams,
    SecuritySummary,
    break_even_transfers,
    bypass_cost,
    bypass_curve,
    direct_cost,
    security_summary,
)
from costs.gas import (
    CostModelError,
    CostParameterError,
    GasOperation,
    GasRow,
    GasTable,
    NotApplicableError,
    UnknownOperationError,
    overhead,
    table8,
)
from costs.mitigation import (
    SUITABILITY,
    SUITABILITY_STANDARDS,
    Mitigation,
    UnknownMitigationError,
    lookup,
    mitigation_catalog,
    tradeoff_rows,
)

__all__ = [
    'GasTable',
    'GasOperation',
    'GasRow',
    'overhead',
    'table8',
    'BypassParams',
    'BypassCost',
    'SecuritySummary',
    'IMPLIED_ETH_PRICE_USD',
    'bypass_cost',
    'direct_cost',
    'break_even_transfers',
    'bypass_curve',
    'security_summary',
    'Mitigation',
    'mitigation_catalog',
    'lookup',
    'tradeoff_rows',
    'SUITABILITY',
    'SUITABILITY_STANDARDS',
    'CostModelError',
    'CostParameterError',
    'UnknownOperationError',
    'NotApplicableError',
    'UnknownMitigationError',
]
