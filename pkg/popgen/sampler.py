"""Seeded sampling and population statistics.

Draws use inverse-CDF lookup on the exact truncated mass function. Tokens
are generated in fixed blocks of ``BLOCK_SIZE``; block ``b`` of collection
``c`` gets its own ``PCG64`` stream seeded from ``SeedSequence([seed, c, b])``,
so any block can be produced independently and the population never
depends on how the work is split.
"""

import logging
import math
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

import numpy as np

from popgen.profiles import (
    DEFAULT_CAPS,
    CAP_GUIDANCE,
    CollectionProfile,
    EmptyPopulationError,
    PopgenParameterError,
    PopulationStats,
)

logger = logging.getLogger(__name__)

BLOCK_SIZE = 4096
GENERATOR_NAME = "numpy.PCG64"
PERCENTILE_RANKS = (50, 90, 95, 99)


def pmf(alpha: float, x_max: int) -> np.ndarray:
    """Probabilities of x = 1..x_max under the truncated power law."""
    support = np.arange(1, x_max + 1, dtype=np.float64)
    weights = support ** -alpha
    return weights / weights.sum()


def cdf(alpha: float, x_max: int) -> np.ndarray:
    """Cumulative probabilities of x = 1..x_max; the last entry is exactly 1."""
    values = np.cumsum(pmf(alpha, x_max))
    values[-1] = 1.0
    return values


def _check_seed(seed: int) -> None:
    if isinstance(seed, bool) or not isinstance(seed, (int, np.integer)) or not 0 <= seed < 2 ** 64:
        raise PopgenParameterError(f"seed must be an unsigned 64-bit integer, got {seed!r}")


def block_generator(seed: int, collection_index: int, block_index: int) -> np.random.Generator:
    """Random generator of one sampling block."""
    sequence = np.random.SeedSequence([int(seed), int(collection_index), int(block_index)])
    return np.random.Generator(np.random.PCG64(sequence))


def sample(profile: CollectionProfile, seed: int, collection_index: int = 0) -> np.ndarray:
    """Draw ``profile.n_tokens`` transfer counts.

    Args:
        profile: Exponent, truncation and population size.
        seed: Unsigned 64-bit seed.
        collection_index: Position of the collection, mixed into every block seed.

    Returns:
        int64 array of counts in 1..x_max.
    """
    _check_seed(seed)
    table = cdf(profile.alpha, profile.x_max)
    blocks = []
    for block_index, start in enumerate(range(0, profile.n_tokens, BLOCK_SIZE)):
        size = min(BLOCK_SIZE, profile.n_tokens - start)
        uniforms = block_generator(seed, collection_index, block_index).random(size)
        blocks.append(np.searchsorted(table, uniforms, side='right') + 1)
    counts = np.concatenate(blocks).astype(np.int64)
    np.minimum(counts, profile.x_max, out=counts)
    logger.debug(f"Sampled {profile.n_tokens} tokens for {profile.name} (alpha={profile.alpha:.3f})")
    return counts


def sample_all(profiles: Sequence[CollectionProfile], seed: int) -> Dict[str, np.ndarray]:
    """Sample every profile; the collection index is its position in ``profiles``."""
    return {profile.name: sample(profile, seed, index) for index, profile in enumerate(profiles)}


def _as_array(counts: Iterable[int]) -> np.ndarray:
    values = np.asarray(list(counts) if not isinstance(counts, np.ndarray) else counts)
    if values.size == 0:
        raise EmptyPopulationError("population is empty")
    return values


def nearest_rank(sorted_values: np.ndarray, rank: int) -> int:
    """Nearest-rank percentile: the ceil(rank/100 * n)-th smallest value."""
    n = len(sorted_values)
    position = max(-(-rank * n // 100), 1)
    return int(sorted_values[position - 1])


def stats(counts: Iterable[int]) -> PopulationStats:
    """Mean and nearest-rank percentiles of a population.

    Raises:
        EmptyPopulationError: If the population is empty.
    """
    values = np.sort(_as_array(counts))
    return PopulationStats(
        mean=float(values.mean(dtype=np.float64)),
        median=nearest_rank(values, 50),
        p90=nearest_rank(values, 90),
        p95=nearest_rank(values, 95),
        p99=nearest_rank(values, 99),
    )


def exceed_fraction(counts: Iterable[int], caps: Sequence[int] = DEFAULT_CAPS) -> Dict[int, float]:
    """Percentage of tokens whose count is strictly greater than each cap.

    Raises:
        EmptyPopulationError: If the population is empty.
    """
    values = _as_array(counts)
    return {cap: 100.0 * float(np.count_nonzero(values > cap)) / values.size for cap in caps}


def analytic_exceed(profile: CollectionProfile, cap: int) -> float:
    """Exact probability P(X > cap) under the profile."""
    if cap >= profile.x_max:
        return 0.0
    if cap < 1:
        return 1.0
    support = np.arange(1, profile.x_max + 1, dtype=np.float64)
    weights = support ** -profile.alpha
    return float(weights[cap:].sum() / weights.sum())


def analytic_mean(profile: CollectionProfile) -> float:
    support = np.arange(1, profile.x_max + 1, dtype=np.float64)
    return float((support * pmf(profile.alpha, profile.x_max)).sum())


def analytic_quantile(profile: CollectionProfile, rank: int) -> int:
    """Smallest x with P(X <= x) >= rank / 100."""
    table = cdf(profile.alpha, profile.x_max)
    return int(np.searchsorted(table, rank / 100.0, side='left')) + 1


def histogram(counts: Iterable[int]) -> List[Tuple[int, int]]:
    """(transfer count, number of tokens) pairs in increasing count order."""
    values, frequencies = np.unique(_as_array(counts), return_counts=True)
    return [(int(v), int(f)) for v, f in zip(values, frequencies)]


def binomial_bound(probability: float, n: int, sigmas: float = 3.0) -> float:
    """Half-width of the sigma-band of a sampled fraction around ``probability``."""
    return sigmas * math.sqrt(probability * (1.0 - probability) / n)


def cap_guidance(
    exceed: Mapping[str, Mapping[int, float]],
    guidance: Mapping[str, Tuple[int, int]] = CAP_GUIDANCE,
) -> List[Tuple[str, int, int, float, float]]:
    """Share of tokens left unaffected at the ends of each recommended cap range.

    Args:
        exceed: Collection -> {cap: percentage exceeding}, e.g. from ``exceed_fraction``.
        guidance: Collection -> (low cap, high cap).

    Returns:
        (collection, low cap, high cap, unaffected % at low, unaffected % at high).
    """
    rows = []
    for name, (low, high) in guidance.items():
        if name not in exceed:
            continue
        row = exceed[name]
        missing = [cap for cap in (low, high) if cap not in row]
        if missing:
            raise PopgenParameterError(f"no exceed fraction for {name} at caps {missing}")
        rows.append((name, low, high, 100.0 - row[low], 100.0 - row[high]))
    return rows
