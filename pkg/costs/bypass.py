"""Wrapper-bypass economics.

An attacker parks a capped token in a wrapper contract (one counted
transfer) and then trades the wrapper freely. Bypassing pays off once the
per-transfer saving against direct ERC-7634 transfers has covered the
wrapper's deployment and deposit.
"""

import logging
from dataclasses import asdict, dataclass
from typing import Any, Dict, List, Mapping, Optional, Tuple

from costs.gas import CostParameterError

logger = logging.getLogger(__name__)

GWEI = 1e-9

# ETH price implied by "450k gas is about $40 at 30 gwei".
IMPLIED_ETH_PRICE_USD = 40.0 / (450_000 * 30 * GWEI)


@dataclass(frozen=True)
class BypassParams:
    """Gas and price assumptions of the bypass model.

    ``g_deposit`` and ``g_wrapper_transfer`` are not published; the defaults
    are chosen so that deployment plus deposit is 504,283 gas and the
    per-transfer saving is 2,282 gas, which puts break-even at 221.

    Attributes:
        g_deploy: Wrapper deployment gas.
        g_deposit: Gas to move the token into the wrapper.
        g_wrapper_transfer: Gas per wrapper ownership transfer.
        g_direct: Gas per direct ERC-7634 transfer.
        gas_price_gwei: Gas price in gwei.
        eth_price_usd: ETH price in USD.
    """
    g_deploy: int = 450_000
    g_deposit: int = 54_283
    g_wrapper_transfer: int = 52_001
    g_direct: int = 54_283
    gas_price_gwei: float = 30.0
    eth_price_usd: float = IMPLIED_ETH_PRICE_USD

    def __post_init__(self) -> None:
        for name, value in asdict(self).items():
            if isinstance(value, bool) or not isinstance(value, (int, float)) or not value > 0:
                raise CostParameterError(f"{name} must be positive, got {value!r}")

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> 'BypassParams':
        """Create params from a dictionary; missing or null keys take defaults.

        Raises:
            CostParameterError: On an unknown key or an invalid value.
        """
        known = set(cls.__dataclass_fields__)
        unknown = sorted(set(data) - known)
        if unknown:
            raise CostParameterError(f"Unknown bypass parameters: {', '.join(unknown)}")
        return cls(**{key: value for key, value in data.items() if value is not None})

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass(frozen=True)
class BypassCost:
    """Cost of a bypass after ``n`` wrapper transfers."""
    n: int
    gas: int
    eth: float
    usd: float


def gas_to_eth(gas: int, params: BypassParams) -> float:
    return gas * params.gas_price_gwei * GWEI


def bypass_cost(n: int, params: Optional[BypassParams] = None) -> BypassCost:
    """Deploy + deposit + n wrapper transfers, in gas, ETH and USD.

    Raises:
        CostParameterError: If n is negative.
    """
    params = params or BypassParams()
    if n < 0:
        raise CostParameterError(f"n must be >= 0, got {n}")
    gas = params.g_deploy + params.g_deposit + n * params.g_wrapper_transfer
    eth = gas_to_eth(gas, params)
    return BypassCost(n=n, gas=gas, eth=eth, usd=eth * params.eth_price_usd)


def direct_cost(n: int, params: Optional[BypassParams] = None) -> int:
    """Gas of n direct counted transfers."""
    params = params or BypassParams()
    if n < 0:
        raise CostParameterError(f"n must be >= 0, got {n}")
    return n * params.g_direct


def break_even_transfers(params: Optional[BypassParams] = None) -> Optional[int]:
    """Smallest n at which the wrapper is no more expensive than direct transfers.

    Returns:
        The break-even n, or None when a wrapper transfer costs at least as
        much as a direct one (the bypass never pays off).
    """
    params = params or BypassParams()
    saving = params.g_direct - params.g_wrapper_transfer
    if saving <= 0:
        return None
    fixed = params.g_deploy + params.g_deposit
    return -(-fixed // saving)


def bypass_curve(params: Optional[BypassParams] = None, max_n: int = 400) -> List[Tuple[int, int, int]]:
    """(n, direct gas, wrapper gas) for n = 0..max_n."""
    params = params or BypassParams()
    return [(n, direct_cost(n, params), bypass_cost(n, params).gas) for n in range(max_n + 1)]


@dataclass(frozen=True)
class SecuritySummary:
    """Headline numbers of the bypass analysis."""
    break_even: Optional[int]
    deploy_gas: int
    deploy_usd: float
    saving_per_transfer: int
    eth_price_usd: float
    gas_price_gwei: float


def security_summary(params: Optional[BypassParams] = None) -> SecuritySummary:
    params = params or BypassParams()
    deploy_usd = gas_to_eth(params.g_deploy, params) * params.eth_price_usd
    summary = SecuritySummary(
        break_even=break_even_transfers(params),
        deploy_gas=params.g_deploy,
        deploy_usd=deploy_usd,
        saving_per_transfer=params.g_direct - params.g_wrapper_transfer,
        eth_price_usd=params.eth_price_usd,
        gas_price_gwei=params.gas_price_gwei,
    )
    logger.debug(f"Bypass break-even: {summary.break_even}, deployment ${deploy_usd:.2f}")
    return summary
