"""Synthetic transfer-count populations calibrated to per-collection statistics."""

from popgen.calibrate import CalibrationResult, calibrate, calibrate_all, calibration_objective
from popgen.profiles import (
    CAP_GUIDANCE,
    COLLECTIONS,
    DEFAULT_CAPS,
    TABLE2_TARGETS,
    CollectionProfile,
    EmptyPopulationError,
    InfeasibleTargetsError,
    PopgenError,
    PopgenParameterError,
    PopulationStats,
)
from popgen.sampler import (
    BLOCK_SIZE,
    GENERATOR_NAME,
    analytic_exceed,
    analytic_mean,
    analytic_quantile,
    binomial_bound,
    cap_guidance,
    cdf,
    exceed_fraction,
    histogram,
    pmf,
    sample,
    sample_all,
    stats,
)

__all__ = [
    'CollectionProfile',
    'PopulationStats',
    'CalibrationResult',
    'COLLECTIONS',
    'DEFAULT_CAPS',
    'TABLE2_TARGETS',
    'CAP_GUIDANCE',
    'BLOCK_SIZE',
    'GENERATOR_NAME',
    'pmf',
    'cdf',
    'sample',
    'sample_all',
    'stats',
    'exceed_fraction',
    'analytic_exceed',
    'analytic_mean',
    'analytic_quantile',
    'histogram',
    'binomial_bound',
    'cap_guidance',
    'calibrate',
    'calibrate_all',
    'calibration_objective',
    'PopgenError',
    'PopgenParameterError',
    'EmptyPopulationError',
    'InfeasibleTargetsError',
]
