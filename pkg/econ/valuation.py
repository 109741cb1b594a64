"""Transfer-adjusted valuation and marginal mobility cost.

    V(k, L) = V_base                       if L = 0
            = V_base * f((L - k) / L)      otherwise

The marginal mobility cost of the next transfer is the value lost by
moving from r = L - k remaining transfers to r - 1.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from econ.premium import (
    EconParameterError,
    NoRemainingBudgetError,
    Power,
    PremiumModel,
    UnboundedTokenError,
    default_models,
)

logger = logging.getLogger(__name__)

# Remaining-transfer fractions listed in the valuation table.
VALUATION_RATIOS = (1.00, 0.90, 0.75, 0.50, 0.25, 0.10, 0.00)

# Marginal-cost stages as (label, remaining transfers before the transition).
# ``None`` means "all L remaining", i.e. the first transfer.
MARGINAL_COST_STAGES: Tuple[Tuple[str, Optional[int]], ...] = (
    ("First transfer", None),
    ("Mid-point", 3),
    ("Last transfer", 1),
)


@dataclass(frozen=True)
class ValuationInput:
    """Inputs of the transfer-adjusted value.

    Attributes:
        v_base: Base value in ETH.
        k: Transfers already used.
        limit: Transfer limit L; 0 is unbounded.
    """
    v_base: float
    k: int
    limit: int

    def __post_init__(self) -> None:
        if self.v_base < 0:
            raise EconParameterError(f"v_base must be non-negative, got {self.v_base}")
        if self.k < 0 or self.limit < 0:
            raise EconParameterError(f"k and L must be non-negative, got k={self.k}, L={self.limit}")
        if self.limit > 0 and self.k > self.limit:
            raise EconParameterError(f"k={self.k} exceeds L={self.limit}")

    @property
    def remaining(self) -> Optional[int]:
        return self.limit - self.k if self.limit > 0 else None


def value(model: PremiumModel, data: ValuationInput) -> float:
    """Transfer-adjusted value of a token.

    Args:
        model: Premium function.
        data: Base value, count and limit.

    Returns:
        Value in ETH.
    """
    if data.limit == 0:
        return data.v_base
    return data.v_base * model.premium((data.limit - data.k) / data.limit)


def value_at_remaining(model: PremiumModel, v_base: float, remaining: int, limit: int) -> float:
    """Value of a token with ``remaining`` of ``limit`` transfers left."""
    return value(model, ValuationInput(v_base, limit - remaining, limit))


def marginal_cost(model: PremiumModel, k: int, limit: int, v_base: float) -> float:
    """Value destroyed by the transfer that moves the count from k to k + 1.

    Raises:
        UnboundedTokenError: If L = 0.
        NoRemainingBudgetError: If k >= L.
    """
    if limit == 0:
        raise UnboundedTokenError("unbounded tokens have no marginal mobility cost")
    if k >= limit:
        raise NoRemainingBudgetError(f"no transfers left at k={k}, L={limit}")
    remaining = limit - k
    return (value_at_remaining(model, v_base, remaining, limit)
            - value_at_remaining(model, v_base, remaining - 1, limit))


@dataclass
class ValuationRow:
    """One row of the valuation table."""
    remaining: int
    ratio: float
    values: Dict[str, float] = field(default_factory=dict)


def table4(
    v_base: float = 10.0,
    limit: int = 20,
    models: Optional[Sequence[PremiumModel]] = None,
    ratios: Sequence[float] = VALUATION_RATIOS,
) -> List[ValuationRow]:
    """Token value under each premium model at selected remaining fractions.

    Rows are indexed by remaining transfers r = L - k, from full budget down
    to exhausted.

    Args:
        v_base: Base value in ETH.
        limit: Transfer limit L.
        models: Models to compare; the four defaults when omitted.
        ratios: Remaining fractions; each is rounded to a whole transfer count.

    Returns:
        One ValuationRow per ratio, values keyed by model label.
    """
    models = list(models) if models is not None else default_models()
    if limit < 1:
        raise EconParameterError(f"valuation table needs L >= 1, got {limit}")

    rows = []
    for ratio in ratios:
        remaining = int(round(ratio * limit))
        row = ValuationRow(remaining=remaining, ratio=remaining / limit)
        for model in models:
            row.values[model.label] = value_at_remaining(model, v_base, remaining, limit)
        rows.append(row)
    return rows


@dataclass
class MarginalCostRow:
    """One stage of the marginal-cost table; costs are percent of V_base per L."""
    stage: str
    percents: Dict[int, Optional[float]] = field(default_factory=dict)


def table5(
    v_base: float = 10.0,
    limits: Sequence[int] = (5, 10, 20, 50),
    model: Optional[PremiumModel] = None,
) -> List[MarginalCostRow]:
    """Marginal mobility cost as a percentage of V_base at three stages.

    The "Mid-point" stage is the transition from three remaining transfers to
    two, which is the transition the printed values correspond to for every L.

    Args:
        v_base: Base value in ETH.
        limits: Transfer limits, one column each.
        model: Premium model; concave (gamma = 0.5) when omitted.

    Returns:
        Rows for the first, mid-point and last transfer. A stage that does
        not exist for a small L is None.
    """
    model = model or Power(0.5)
    if v_base <= 0:
        raise EconParameterError(f"v_base must be positive for percentages, got {v_base}")

    rows = []
    for stage, remaining in MARGINAL_COST_STAGES:
        row = MarginalCostRow(stage=stage)
        for limit in limits:
            before = limit if remaining is None else remaining
            if before > limit or before < 1:
                row.percents[limit] = None
                continue
            cost = marginal_cost(model, limit - before, limit, v_base)
            row.percents[limit] = 100.0 * cost / v_base
        rows.append(row)
    return rows


def value_curve(
    models: Optional[Sequence[PremiumModel]] = None,
    v_base: float = 10.0,
    limit: int = 20,
) -> List[Tuple[str, int, float]]:
    """Value of every model at each remaining count r = 0..L.

    Returns:
        (model label, remaining, value) tuples.
    """
    models = list(models) if models is not None else default_models()
    return [
        (model.label, remaining, value_at_remaining(model, v_base, remaining, limit))
        for model in models
        for remaining in range(limit + 1)
    ]


def concave_across_limits(
    limits: Sequence[int] = (5, 10, 20, 50),
    v_base: float = 10.0,
    gamma: float = 0.5,
) -> List[Tuple[int, int, float]]:
    """Concave-model value at each remaining count for several limits.

    Returns:
        (L, remaining, value) tuples.
    """
    model = Power(gamma)
    return [
        (limit, remaining, value_at_remaining(model, v_base, remaining, limit))
        for limit in limits
        for remaining in range(limit + 1)
    ]


def marginal_cost_curve(
    model: Optional[PremiumModel] = None,
    limits: Sequence[int] = (5, 10, 20, 50),
    v_base: float = 10.0,
) -> List[Tuple[int, int, float]]:
    """Marginal cost of every successive transfer, as percent of V_base.

    Returns:
        (L, transfer number 1..L, percent) tuples.
    """
    model = model or Power(0.5)
    curve = []
    for limit in limits:
        for k in range(limit):
            cost = marginal_cost(model, k, limit, v_base)
            curve.append((limit, k + 1, 100.0 * cost / v_base))
    logger.debug(f"Marginal cost curve: {len(curve)} points over limits {list(limits)}")
    return curve
