"""Wrapper-bypass mitigations and use-case suitability scores."""

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from costs.gas import CostModelError


class UnknownMitigationError(CostModelError):
    """Raised when a mitigation name is not in the catalog."""
    pass


@dataclass(frozen=True)
class Mitigation:
    """A bypass mitigation and its trade-offs.

    Scores are percentages; None means no score was published.
    """
    key: str
    name: str
    extra_gas: int
    resistance_score: Optional[float] = None
    composability_score: Optional[float] = None

    def __post_init__(self) -> None:
        if self.extra_gas < 0:
            raise CostModelError(f"extra_gas must be >= 0, got {self.extra_gas}")


_CATALOG: Tuple[Mitigation, ...] = (
    Mitigation("allowlist", "Recipient allowlist", 8_200),
    Mitigation("wrapper-detection", "Soulbound wrapper detection", 12_400),
    Mitigation("ERC-6982", "ERC-6982 lockable integration", 15_600, 85.0, 55.0),
    Mitigation("cooldown", "Transfer cooldown period", 5_100),
    Mitigation("baseline", "No mitigation (baseline)", 0),
)


def mitigation_catalog() -> List[Mitigation]:
    return list(_CATALOG)


def lookup(name: str) -> Mitigation:
    """Find a mitigation by key or display name, case-insensitively.

    Raises:
        UnknownMitigationError: If nothing matches.
    """
    wanted = name.strip().lower()
    for mitigation in _CATALOG:
        if wanted in (mitigation.key.lower(), mitigation.name.lower()):
            return mitigation
    raise UnknownMitigationError(f"Unknown mitigation: {name}")


def tradeoff_rows(direct_transfer_gas: int) -> List[Tuple[str, int, float, Optional[float], Optional[float]]]:
    """(name, extra gas, gas overhead % over a direct transfer, resistance, composability)."""
    return [
        (m.name, m.extra_gas, m.extra_gas / direct_transfer_gas * 100.0,
         m.resistance_score, m.composability_score)
        for m in _CATALOG
    ]


SUITABILITY_STANDARDS: Tuple[str, ...] = ("ERC-721", "ERC-5192", "ERC-6982", "ERC-7634")

# Use case -> 0..5 score per standard, in SUITABILITY_STANDARDS order.
SUITABILITY: Dict[str, Tuple[int, int, int, int]] = {
    "Identity": (1, 5, 2, 3),
    "DeFi collateral": (5, 0, 4, 4),
    "RWA": (3, 1, 3, 4),
    "Loyalty": (3, 4, 3, 4),
    "Digital art": (5, 0, 3, 4),
    "Gaming items": (3, 0, 3, 5),
    "Event tickets": (1, 3, 3, 5),
    "Memberships": (2, 4, 3, 5),
}
