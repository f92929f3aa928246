"""Closed-form moments of a Cauchy variable ``X ~ C(gamma)``.

All formulas are evaluated in real trigonometric form.  The equivalent
quotient forms such as ``(g**p - conj(g)**p) / (1 - exp(2j*pi*p))`` are
0/0 at ``p = 0`` and lose digits nearby.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .cxcore import cpow
from .errors import DegreeTooSmallError, DomainError, PowerOutOfRangeError


@dataclass(frozen=True)
class CauchyParams:
    """Location ``mu`` and scale ``sigma`` packed as ``gamma = mu + i*sigma``."""

    mu: float
    sigma: float
    gamma: complex = field(init=False, repr=False)
    arg_gamma: float = field(init=False, repr=False)
    abs_gamma: float = field(init=False, repr=False)

    def __post_init__(self):
        mu, sigma = float(self.mu), float(self.sigma)
        if not (math.isfinite(mu) and math.isfinite(sigma)):
            raise DomainError("mu and sigma must be finite")
        if not sigma > 0.0:
            raise DomainError(f"sigma must be > 0, got {sigma!r}")
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "sigma", sigma)
        object.__setattr__(self, "gamma", complex(mu, sigma))
        # sigma > 0 so atan2 lands in (0, pi)
        object.__setattr__(self, "arg_gamma", math.atan2(sigma, mu))
        object.__setattr__(self, "abs_gamma", math.hypot(mu, sigma))

    @classmethod
    def from_complex(cls, gamma: complex) -> "CauchyParams":
        gamma = complex(gamma)
        return cls(gamma.real, gamma.imag)


def _coerce(gamma) -> CauchyParams:
    if isinstance(gamma, CauchyParams):
        return gamma
    return CauchyParams.from_complex(gamma)


def _check_power(p: float) -> float:
    p = float(p)
    if not abs(p) < 1.0:
        raise PowerOutOfRangeError(f"moments of order |p| >= 1 diverge (p={p!r})")
    return p


@dataclass(frozen=True)
class LogMoments:
    e_log_abs: float
    e_log_abs_sq: float
    var_log_abs: float
    var_log: float


def expected_pow(gamma, p: float) -> complex:
    """``E[X**p] = gamma**p`` for ``|p| < 1`` (real-axis primary branch)."""
    g = _coerce(gamma)
    return cpow(g.gamma, _check_power(p))


def expected_pow_positive(gamma, p: float) -> float:
    """``E[X**p ; X > 0] = |g|**p * sin(p*(pi - arg g)) / sin(p*pi)``.

    At ``p = 0`` the continuous extension ``(pi - arg g) / pi = P(X > 0)``
    is returned.
    """
    g = _coerce(gamma)
    p = _check_power(p)
    theta = g.arg_gamma
    if p == 0.0:
        return (math.pi - theta) / math.pi
    return g.abs_gamma**p * math.sin(p * (math.pi - theta)) / math.sin(p * math.pi)


def expected_abs_pow(gamma, p: float) -> float:
    """``E[|X|**p] = |g|**p * cos(p*(arg g - pi/2)) / cos(p*pi/2)``."""
    g = _coerce(gamma)
    p = _check_power(p)
    if p == 0.0:
        return 1.0
    theta = g.arg_gamma
    return g.abs_gamma**p * math.cos(p * (theta - math.pi / 2)) / math.cos(p * math.pi / 2)


def log_moments(gamma) -> LogMoments:
    g = _coerce(gamma)
    theta = g.arg_gamma
    ell = math.log(g.abs_gamma)
    var_abs = theta * (math.pi - theta)
    return LogMoments(
        e_log_abs=ell,
        e_log_abs_sq=ell * ell + var_abs,
        var_log_abs=var_abs,
        var_log=2.0 * var_abs,
    )


def gm_component_variance(gamma, n: int) -> float:
    """Variance of the real (equivalently imaginary) part of the geometric
    mean of ``n`` iid ``C(gamma)`` draws.

    The real/imaginary covariance is identically zero, see
    :func:`gm_component_covariance`.
    """
    g = _coerce(gamma)
    if int(n) != n or n < 3:
        raise DegreeTooSmallError(f"n must be an integer >= 3, got {n!r}")
    n = int(n)
    ratio = math.cos((2.0 * g.arg_gamma - math.pi) / n) / math.cos(math.pi / n)
    return 0.5 * g.abs_gamma**2 * math.expm1(n * math.log(ratio))


def gm_component_covariance(gamma, n: int) -> float:
    _coerce(gamma)
    if int(n) != n or n < 3:
        raise DegreeTooSmallError(f"n must be an integer >= 3, got {n!r}")
    return 0.0
