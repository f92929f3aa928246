"""Estimate the Cauchy parameter ``gamma = mu + i*sigma`` with the complex
geometric mean and build asymptotic confidence regions around it."""

__version__ = "0.1.0"

from .analytic import (
    CauchyParams, LogMoments, expected_abs_pow, expected_pow, expected_pow_positive,
    gm_component_covariance, gm_component_variance, log_moments,
)
from .cxcore import branch_log, cpow
from .errors import (
    AlphaDomainError, DegreeTooSmallError, DomainError, NoConvergenceError, NonFiniteError,
    PowerOutOfRangeError, QuantileDomainError, SampleTooSmallError, ZeroBaseError, ZeroDatumError,
)
from .estimate import (
    EstimateResult, estimate, geometric_mean, log_variance, median, shifted_estimate, upper_median,
)
from .quantiles import normal_quantile_upper, student_t_quantile_upper
from .regions import (
    ConfidenceDisc, ConfidenceIntervals, ConfidenceSquare, confidence_disc, confidence_intervals,
    confidence_square,
)

__all__ = [name for name in dir() if not name.startswith("_")]
