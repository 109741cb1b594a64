"""Fit power-law exponents to published percentile targets.

The fit works on the exact truncated mass function, not on samples:

    1. scan alpha over a fixed grid and keep exponents whose median equals
       the target median,
    2. score each by squared log error of P90, P95 and P99, plus a penalty
       when a percentile sits so close to a step of the CDF that a sample of
       ``n_tokens`` could round it to the neighbouring value, plus a small
       continuous term that separates exponents with identical percentiles,
    3. refine around the best grid point with a bounded scalar minimizer.

Ties on the grid go to the largest exponent.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Dict, Mapping, Optional

import numpy as np
from scipy.optimize import minimize_scalar

from popgen.profiles import (
    COLLECTIONS,
    TABLE2_TARGETS,
    CollectionProfile,
    InfeasibleTargetsError,
    PopgenParameterError,
    PopulationStats,
)
from popgen.sampler import PERCENTILE_RANKS, analytic_mean, analytic_quantile

logger = logging.getLogger(__name__)

ALPHA_MIN = 1.05
ALPHA_MAX = 6.0
ALPHA_STEP = 0.005

STABILITY_SIGMAS = 3.0
STABILITY_WEIGHT = 1.0
TIE_WEIGHT = 0.1

_TAIL_RANKS = (90, 95, 99)


@dataclass
class CalibrationResult:
    """Best-fit profile for one set of targets.

    Attributes:
        profile: Fitted profile.
        targets: Targets the fit was run against.
        fitted: Analytic statistics of the fitted profile.
        residuals: Fitted minus target, per percentile name.
        objective: Objective value at the fitted exponent.
    """
    profile: CollectionProfile
    targets: PopulationStats
    fitted: PopulationStats
    residuals: Dict[str, int] = field(default_factory=dict)
    objective: float = 0.0


def _cdf_grid(alphas: np.ndarray, x_max: int) -> np.ndarray:
    support = np.arange(1, x_max + 1, dtype=np.float64)
    weights = support[np.newaxis, :] ** -alphas[:, np.newaxis]
    cumulative = np.cumsum(weights, axis=1)
    grid = cumulative / cumulative[:, -1:]
    grid[:, -1] = 1.0
    return grid


def _quantiles(grid: np.ndarray, rank: int) -> np.ndarray:
    """1-based smallest x with CDF(x) >= rank/100, one per row."""
    return (grid >= rank / 100.0).argmax(axis=1) + 1


def _cdf_at(grid: np.ndarray, x: np.ndarray) -> np.ndarray:
    """CDF(x) per row for 1-based x; CDF(0) is 0."""
    padded = np.concatenate([np.zeros((grid.shape[0], 1)), grid], axis=1)
    return np.take_along_axis(padded, x[:, np.newaxis], axis=1)[:, 0]


def objective_grid(
    alphas: np.ndarray,
    targets: PopulationStats,
    x_max: int,
    n_tokens: int,
) -> np.ndarray:
    """Calibration objective for every exponent in ``alphas``.

    Exponents whose median misses the target get ``inf``.
    """
    alphas = np.atleast_1d(np.asarray(alphas, dtype=np.float64))
    grid = _cdf_grid(alphas, x_max)
    target_values = targets.percentiles()

    medians = _quantiles(grid, 50)
    score = np.where(medians == targets.median, 0.0, np.inf)

    for rank in _TAIL_RANKS:
        target = target_values[rank]
        fitted = _quantiles(grid, rank)
        score = score + (np.log(fitted) - math.log(target)) ** 2

        if target <= x_max:
            mid = _cdf_at(grid, np.full(len(alphas), target - 1)) + 0.5 * (
                _cdf_at(grid, np.full(len(alphas), target))
                - _cdf_at(grid, np.full(len(alphas), target - 1))
            )
            score = score + TIE_WEIGHT * (mid - rank / 100.0) ** 2

    for rank in PERCENTILE_RANKS:
        q = rank / 100.0
        margin = STABILITY_SIGMAS * math.sqrt(q * (1.0 - q) / n_tokens)
        fitted = _quantiles(grid, rank)
        below = _cdf_at(grid, fitted - 1)
        at = _cdf_at(grid, fitted)
        may_drop = (fitted > 1) & (below >= q - margin)
        may_rise = (fitted < x_max) & (at < q + margin)
        drop_cost = (np.log(fitted) - np.log(np.maximum(fitted - 1, 1))) ** 2
        rise_cost = (np.log(fitted + 1) - np.log(fitted)) ** 2
        score = score + STABILITY_WEIGHT * (np.where(may_drop, drop_cost, 0.0)
                                            + np.where(may_rise, rise_cost, 0.0))
    return score


def calibration_objective(alpha: float, targets: PopulationStats, x_max: int, n_tokens: int) -> float:
    """Objective for a single exponent."""
    return float(objective_grid(np.array([alpha]), targets, x_max, n_tokens)[0])


def calibrate(
    targets: PopulationStats,
    x_max: int = 1000,
    n_tokens: int = 10_000,
    name: str = "custom",
) -> CalibrationResult:
    """Fit a truncated power-law exponent to percentile targets.

    Args:
        targets: Target median and tail percentiles.
        x_max: Truncation bound of the fitted profile.
        n_tokens: Population size the percentiles must be stable for.
        name: Name of the returned profile.

    Returns:
        CalibrationResult with the fitted profile and residuals.

    Raises:
        InfeasibleTargetsError: If no exponent in [1.05, 6.0] meets the median.
    """
    if x_max < 1 or n_tokens < 1:
        raise PopgenParameterError("x_max and n_tokens must be positive")
    if targets.p99 > x_max:
        logger.warning(f"{name}: target P99 {targets.p99} exceeds x_max {x_max}")

    count = int(round((ALPHA_MAX - ALPHA_MIN) / ALPHA_STEP)) + 1
    alphas = np.round(np.linspace(ALPHA_MIN, ALPHA_MAX, count), 6)
    scores = objective_grid(alphas, targets, x_max, n_tokens)

    if not np.isfinite(scores).any():
        raise InfeasibleTargetsError(
            f"{name}: no alpha in [{ALPHA_MIN}, {ALPHA_MAX}] gives median {targets.median}"
        )

    best_score = scores.min()
    # last index among ties -> largest alpha
    best_index = int(np.flatnonzero(scores == best_score)[-1])
    best_alpha = float(alphas[best_index])

    refined = minimize_scalar(
        calibration_objective,
        bounds=(max(ALPHA_MIN, best_alpha - ALPHA_STEP), min(ALPHA_MAX, best_alpha + ALPHA_STEP)),
        args=(targets, x_max, n_tokens),
        method='bounded',
        options={'xatol': 1e-6},
    )
    refined_alpha: Optional[float] = float(refined.x) if refined.success else None
    if refined_alpha is not None and float(refined.fun) < best_score:
        best_alpha, best_score = refined_alpha, float(refined.fun)

    profile = CollectionProfile(name=name, alpha=best_alpha, x_max=x_max, n_tokens=n_tokens)
    fitted = PopulationStats(
        mean=analytic_mean(profile),
        median=analytic_quantile(profile, 50),
        p90=analytic_quantile(profile, 90),
        p95=analytic_quantile(profile, 95),
        p99=analytic_quantile(profile, 99),
    )
    residuals = {
        'median': fitted.median - targets.median,
        'p90': fitted.p90 - targets.p90,
        'p95': fitted.p95 - targets.p95,
        'p99': fitted.p99 - targets.p99,
    }

    logger.info(f"Calibrated {name}: alpha={best_alpha:.3f} objective={best_score:.4f} "
                f"residuals={residuals}")
    return CalibrationResult(profile=profile, targets=targets, fitted=fitted,
                             residuals=residuals, objective=best_score)


def calibrate_all(
    targets: Optional[Mapping[str, PopulationStats]] = None,
    x_max: int = 1000,
    n_tokens: int = 10_000,
) -> Dict[str, CalibrationResult]:
    """Calibrate every collection, in table order."""
    targets = targets if targets is not None else TABLE2_TARGETS
    order = [name for name in COLLECTIONS if name in targets]
    order += [name for name in targets if name not in COLLECTIONS]
    return {name: calibrate(targets[name], x_max, n_tokens, name) for name in order}
