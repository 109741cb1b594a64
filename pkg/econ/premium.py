"""Mobility-premium functions.

A premium function f maps the remaining-transfer fraction x = (L - k) / L
onto a multiplier of the token's base value. Every variant satisfies
f(1) = 1, is non-decreasing on [0, 1] and stays within [0, 1].
"""

import logging
import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Any, Dict, List, Optional

logger = logging.getLogger(__name__)


class EconError(Exception):
    """Base exception for valuation models."""
    pass


class EconParameterError(EconError):
    """Raised when a model or valuation parameter is out of range."""
    pass


class DomainError(EconError):
    """Raised when a premium function is evaluated outside [0, 1]."""

    def __init__(self, x: float):
        self.x = x
        super().__init__(f"premium argument {x!r} is outside [0, 1]")


class NoRemainingBudgetError(EconError):
    """Raised when a marginal cost is requested for k >= L."""
    pass


class UnboundedTokenError(EconError):
    """Raised when a marginal cost is requested for an unbounded token (L = 0)."""
    pass


class PremiumModel(ABC):
    """Abstract base class for mobility-premium functions."""

    @property
    @abstractmethod
    def label(self) -> str:
        """Column name used in tables."""
        pass

    @abstractmethod
    def _evaluate(self, x: float) -> float:
        pass

    def premium(self, x: float) -> float:
        """Evaluate f(x).

        Args:
            x: Remaining-transfer fraction in [0, 1].

        Returns:
            Premium multiplier in [0, 1].

        Raises:
            DomainError: If x is outside [0, 1] or not finite.
        """
        if isinstance(x, bool) or not isinstance(x, (int, float)) or math.isnan(x):
            raise DomainError(x)
        if x < 0.0 or x > 1.0:
            raise DomainError(x)
        return self._evaluate(float(x))

    def __call__(self, x: float) -> float:
        return self.premium(x)


@dataclass(frozen=True)
class Linear(PremiumModel):
    """f(x) = x."""

    @property
    def label(self) -> str:
        return "Linear"

    def _evaluate(self, x: float) -> float:
        return x


@dataclass(frozen=True)
class Power(PremiumModel):
    """f(x) = x ** gamma; concave for gamma < 1, convex for gamma > 1."""
    gamma: float = 0.5

    def __post_init__(self) -> None:
        if not (isinstance(self.gamma, (int, float)) and self.gamma > 0 and math.isfinite(self.gamma)):
            raise EconParameterError(f"gamma must be a positive number, got {self.gamma!r}")

    @property
    def label(self) -> str:
        if self.gamma < 1:
            return "Concave"
        if self.gamma > 1:
            return "Convex"
        return "Linear"

    def _evaluate(self, x: float) -> float:
        return x ** self.gamma


@dataclass(frozen=True)
class Threshold(PremiumModel):
    """Cliff model: (x - tau) / (1 - tau) above tau, a residual fraction below.

    Above the threshold the value never drops under the residual, so f stays
    monotone across the cliff.
    """
    tau: float = 0.2
    residual: float = 0.05

    def __post_init__(self) -> None:
        if not 0.0 < self.tau < 1.0:
            raise EconParameterError(f"tau must be in (0, 1), got {self.tau!r}")
        if not 0.0 <= self.residual < 1.0:
            raise EconParameterError(f"residual must be in [0, 1), got {self.residual!r}")

    @property
    def label(self) -> str:
        return "Threshold"

    def _evaluate(self, x: float) -> float:
        if x > self.tau:
            return max(self.residual, (x - self.tau) / (1.0 - self.tau))
        return self.residual


def create_premium_model(kind: str, **params: Any) -> PremiumModel:
    """Factory for premium models by name.

    Args:
        kind: One of 'linear', 'concave', 'convex', 'power', 'threshold'.
        **params: ``gamma`` for power models; ``tau`` and ``residual`` for threshold.

    Returns:
        A PremiumModel instance.

    Raises:
        EconParameterError: If the kind is unknown or parameters are invalid.
    """
    kind = kind.lower()
    try:
        if kind == 'linear':
            return Linear()
        if kind == 'concave':
            return Power(params.get('gamma', 0.5))
        if kind == 'convex':
            return Power(params.get('gamma', 2.0))
        if kind == 'power':
            return Power(params['gamma'])
        if kind == 'threshold':
            return Threshold(params.get('tau', 0.2), params.get('residual', 0.05))
    except (KeyError, TypeError) as e:
        raise EconParameterError(f"Invalid parameters for {kind} model: {params}") from e
    raise EconParameterError(f"Unknown premium model: {kind}")


def default_models(
    concave_gamma: float = 0.5,
    convex_gamma: float = 2.0,
    tau: float = 0.2,
    residual: float = 0.05,
    config: Optional[Dict[str, Any]] = None,
) -> List[PremiumModel]:
    """The four models compared in the valuation table, in column order.

    Args:
        concave_gamma: Exponent of the concave model.
        convex_gamma: Exponent of the convex model.
        tau: Threshold position.
        residual: Value fraction kept below the threshold.
        config: Optional ``econ`` config block overriding the keyword defaults.

    Returns:
        Linear, concave, convex and threshold models.
    """
    if config:
        concave_gamma = config.get('concave_gamma', concave_gamma)
        convex_gamma = config.get('convex_gamma', convex_gamma)
        tau = config.get('threshold_tau', tau)
        residual = config.get('threshold_residual', residual)
    return [
        Linear(),
        Power(concave_gamma),
        Power(convex_gamma),
        Threshold(tau, residual),
    ]
