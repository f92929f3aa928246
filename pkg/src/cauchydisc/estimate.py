"""Point estimators built on the complex geometric mean.

Sums of logarithms go through :func:`math.fsum`, which is correctly rounded
and therefore independent of data order.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal, Sequence

import numpy as np

from .cxcore import branch_log_parts, cexp
from .errors import NonFiniteError, SampleTooSmallError, ZeroDatumError

VFormula = Literal["corrected", "paper"]
V_FORMULAS = ("corrected", "paper")


def as_sample(values: Sequence[float] | np.ndarray, *, min_size: int = 1) -> np.ndarray:
    """Validate observations and return them as a read-only float array."""
    x = np.array(values, dtype=float).ravel()
    if x.size < min_size:
        raise SampleTooSmallError(f"need at least {min_size} observations, got {x.size}")
    if not np.all(np.isfinite(x)):
        i = int(np.flatnonzero(~np.isfinite(x))[0])
        raise NonFiniteError(f"non-finite datum at index {i}: {x[i]!r}")
    if np.any(x == 0.0):
        i = int(np.flatnonzero(x == 0.0)[0])
        raise ZeroDatumError(f"zero datum at index {i}")
    x.flags.writeable = False
    return x


def _mean_log(x: np.ndarray) -> complex:
    re, _ = branch_log_parts(x)
    negatives = int(np.count_nonzero(x < 0.0))
    return complex(math.fsum(re) / x.size, math.pi * negatives / x.size)


def geometric_mean(sample) -> complex:
    """``prod x_j**(1/N)`` evaluated as ``exp(mean(branch_log(x_j)))``."""
    x = as_sample(sample)
    return cexp(_mean_log(x))


def log_variance(sample, v_formula: VFormula = "corrected") -> float:
    """Sample variance of the complex logs ``l_j = branch_log(x_j)``.

    ``corrected`` is the unbiased ``sum |l_j - mean|**2 / (N-1)``.
    ``paper`` is ``sum |l_j|**2 / (N-1) - |mean|**2``, which is biased
    by a term of order ``1/N`` but kept for reproducing published tables.
    """
    x = as_sample(sample)
    n = x.size
    if n < 2:
        raise SampleTooSmallError("log_variance needs at least 2 observations")
    re, im = branch_log_parts(x)
    m = _mean_log(x)
    if v_formula == "corrected":
        ss = math.fsum((re - m.real) ** 2) + math.fsum((im - m.imag) ** 2)
        return ss / (n - 1)
    if v_formula == "paper":
        ss = math.fsum(re**2) + math.fsum(im**2)
        return ss / (n - 1) - abs(m) ** 2
    raise ValueError(f"unknown v_formula {v_formula!r}")


@dataclass(frozen=True)
class EstimateResult:
    p_n: complex
    v_n: float
    n: int
    v_formula: str = "corrected"


def estimate(sample, v_formula: VFormula = "corrected") -> EstimateResult:
    x = as_sample(sample, min_size=2)
    return EstimateResult(
        p_n=geometric_mean(x),
        v_n=log_variance(x, v_formula),
        n=int(x.size),
        v_formula=v_formula,
    )


def shifted_estimate(sample, theta: float, epsilon: float) -> complex:
    """``theta - i*eps + prod (x_j - theta + i*eps)**(1/N)``.

    With ``epsilon > 0`` every factor sits in the open upper half plane and
    the estimator is unbiased for any fixed ``theta``.  With ``epsilon == 0``
    and ``theta`` equal to a datum, one factor is zero and the result is
    ``theta`` exactly.
    """
    x = as_sample(sample)
    theta = float(theta)
    epsilon = float(epsilon)
    if not (math.isfinite(theta) and math.isfinite(epsilon)):
        raise NonFiniteError("theta and epsilon must be finite")
    if epsilon < 0.0:
        raise ValueError(f"epsilon must be >= 0, got {epsilon!r}")
    if epsilon == 0.0:
        y = x - theta
        if np.any(y == 0.0):
            return complex(theta, 0.0)
        return theta + geometric_mean(y)
    y = x - theta
    # eps > 0 puts every factor in the upper half plane: arg in (0, pi)
    log_re = np.log(np.hypot(y, epsilon))
    log_im = np.arctan2(epsilon, y)
    mean = complex(math.fsum(log_re) / x.size, math.fsum(log_im) / x.size)
    out = complex(theta, -epsilon) + cexp(mean)
    if not (math.isfinite(out.real) and math.isfinite(out.imag)):
        raise NonFiniteError("shifted estimate overflowed")
    return out


def median(sample) -> float:
    """Middle order statistic; mean of the two middle ones for even N."""
    x = np.sort(as_sample(sample))
    n = x.size
    h = n // 2
    if n % 2:
        return float(x[h])
    return float(0.5 * (x[h - 1] + x[h]))


def upper_median(sample) -> float:
    """The ``(floor(N/2) + 1)``-th order statistic (1-indexed)."""
    x = np.sort(as_sample(sample))
    return float(x[x.size // 2])


def geometric_mean_rows(samples: np.ndarray) -> np.ndarray:
    """Geometric mean of each row of a 2-D array of validated data.

    Monte Carlo fast path; uses numpy pairwise summation instead of fsum.
    """
    samples = np.asarray(samples, dtype=float)
    re, im = branch_log_parts(samples)
    n = samples.shape[-1]
    mre = re.sum(axis=-1) / n
    mim = im.sum(axis=-1) / n
    return np.exp(mre) * (np.cos(mim) + 1j * np.sin(mim))
