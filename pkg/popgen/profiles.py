"""Collection profiles and published transfer-count targets."""

import logging
from dataclasses import asdict, dataclass
from typing import Any, Dict, Tuple

logger = logging.getLogger(__name__)

COLLECTIONS: Tuple[str, ...] = ("PFP", "Art", "Gaming", "Memberships", "Metaverse")

DEFAULT_CAPS: Tuple[int, ...] = (3, 5, 10, 20, 50, 100)


class PopgenError(Exception):
    """Base exception for population generation."""
    pass


class PopgenParameterError(PopgenError):
    """Raised when a profile or target is out of range."""
    pass


class EmptyPopulationError(PopgenError):
    """Raised when statistics are requested for an empty population."""
    pass


class InfeasibleTargetsError(PopgenError):
    """Raised when no exponent in the search range meets the target median."""
    pass


@dataclass(frozen=True)
class CollectionProfile:
    """Truncated discrete power law P(X = x) ~ x^-alpha on 1..x_max.

    Attributes:
        name: Collection label.
        alpha: Power-law exponent (> 1).
        x_max: Largest transfer count.
        n_tokens: Population size drawn by the sampler.
    """
    name: str
    alpha: float
    x_max: int = 1000
    n_tokens: int = 10_000

    def __post_init__(self) -> None:
        if not self.alpha > 1.0:
            raise PopgenParameterError(f"alpha must be > 1, got {self.alpha}")
        if self.x_max < 1:
            raise PopgenParameterError(f"x_max must be >= 1, got {self.x_max}")
        if self.n_tokens < 1:
            raise PopgenParameterError(f"n_tokens must be >= 1, got {self.n_tokens}")


@dataclass(frozen=True)
class PopulationStats:
    """Summary of a transfer-count population.

    Attributes:
        mean: Arithmetic mean.
        median: Nearest-rank 50th percentile.
        p90: Nearest-rank 90th percentile.
        p95: Nearest-rank 95th percentile.
        p99: Nearest-rank 99th percentile.
    """
    mean: float
    median: int
    p90: int
    p95: int
    p99: int

    def __post_init__(self) -> None:
        if not self.median <= self.p90 <= self.p95 <= self.p99:
            raise PopgenParameterError(
                f"percentiles must be ordered, got {self.median}/{self.p90}/{self.p95}/{self.p99}"
            )
        if self.median < 1:
            raise PopgenParameterError(f"transfer counts start at 1, got median {self.median}")

    def percentiles(self) -> Dict[int, int]:
        """Percentile rank -> value."""
        return {50: self.median, 90: self.p90, 95: self.p95, 99: self.p99}

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'PopulationStats':
        """Create PopulationStats from a dictionary.

        Raises:
            PopgenParameterError: If a field is missing or mistyped.
        """
        try:
            return cls(
                mean=float(data['mean']),
                median=int(data['median']),
                p90=int(data['p90']),
                p95=int(data['p95']),
                p99=int(data['p99']),
            )
        except (KeyError, TypeError, ValueError) as e:
            raise PopgenParameterError(f"Invalid population targets: {data}") from e


# Published per-collection statistics over 10,000 tokens each.
TABLE2_TARGETS: Dict[str, PopulationStats] = {
    "PFP": PopulationStats(6.30, 1, 9, 19, 83),
    "Art": PopulationStats(2.62, 1, 4, 7, 23),
    "Gaming": PopulationStats(12.83, 2, 17, 41, 304),
    "Memberships": PopulationStats(1.60, 1, 3, 4, 9),
    "Metaverse": PopulationStats(4.10, 1, 6, 11, 50),
}

# Recommended cap ranges per collection.
CAP_GUIDANCE: Dict[str, Tuple[int, int]] = {
    "Memberships": (3, 5),
    "Art": (10, 20),
    "Gaming": (20, 50),
}
