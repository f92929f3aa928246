"""Asymptotic confidence regions for ``gamma = mu + i*sigma``.

All three regions are centred at the geometric mean ``P_N`` and scale with
``sqrt(V_N / N) * |P_N|``; they differ only in shape and quantile factor:

=========  ====================================  ============================
region     size                                  quantile
=========  ====================================  ============================
disc       radius ``k * sqrt(-ln a)``            complex normal modulus
square     half side ``k * rho_b / sqrt(2)``     ``b = (1 - sqrt(1 - a)) / 2``
intervals  half width ``k * rho_{a/2} / sqrt 2`` two-sided normal
=========  ====================================  ============================

Regions are closed sets; a point on the boundary counts as covered.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import AlphaDomainError
from .estimate import EstimateResult
from .quantiles import normal_quantile_upper

REGION_KINDS = ("disc", "square", "intervals")


@dataclass(frozen=True)
class ConfidenceDisc:
    center: complex
    radius: float
    alpha: float

    kind = "disc"

    def contains(self, z: complex) -> bool:
        return abs(complex(z) - self.center) <= self.radius

    def translated(self, shift: float) -> "ConfidenceDisc":
        return ConfidenceDisc(self.center + shift, self.radius, self.alpha)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "alpha": self.alpha,
            "center": {"re": self.center.real, "im": self.center.imag},
            "radius": self.radius,
        }


@dataclass(frozen=True)
class ConfidenceSquare:
    center: complex
    half_side: float
    alpha: float

    kind = "square"

    def contains(self, z: complex) -> bool:
        d = complex(z) - self.center
        return abs(d.real) <= self.half_side and abs(d.imag) <= self.half_side

    def translated(self, shift: float) -> "ConfidenceSquare":
        return ConfidenceSquare(self.center + shift, self.half_side, self.alpha)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "alpha": self.alpha,
            "center": {"re": self.center.real, "im": self.center.imag},
            "half_side": self.half_side,
        }


@dataclass(frozen=True)
class ConfidenceIntervals:
    """Separate intervals for ``mu`` and ``sigma``, each at level ``1 - alpha``."""

    mu_lo: float
    mu_hi: float
    sigma_lo: float
    sigma_hi: float
    alpha: float

    kind = "intervals"

    @property
    def center(self) -> complex:
        return complex(0.5 * (self.mu_lo + self.mu_hi), 0.5 * (self.sigma_lo + self.sigma_hi))

    @property
    def half_width(self) -> float:
        return 0.5 * (self.mu_hi - self.mu_lo)

    def contains_mu(self, mu: float) -> bool:
        return self.mu_lo <= mu <= self.mu_hi

    def contains_sigma(self, sigma: float) -> bool:
        return self.sigma_lo <= sigma <= self.sigma_hi

    def contains(self, z: complex) -> bool:
        """Joint membership (the rectangle); its coverage is about ``(1-alpha)**2``."""
        z = complex(z)
        return self.contains_mu(z.real) and self.contains_sigma(z.imag)

    def translated(self, shift: float) -> "ConfidenceIntervals":
        return ConfidenceIntervals(self.mu_lo + shift, self.mu_hi + shift,
                                   self.sigma_lo, self.sigma_hi, self.alpha)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "alpha": self.alpha,
            "mu": [self.mu_lo, self.mu_hi],
            "sigma": [self.sigma_lo, self.sigma_hi],
        }


def _scale(est: EstimateResult) -> float:
    # sqrt(V_N / N) * |P_N|
    return math.sqrt(max(est.v_n, 0.0) / est.n) * abs(est.p_n)


def _open_alpha(alpha: float) -> float:
    alpha = float(alpha)
    if not 0.0 < alpha < 1.0:
        raise AlphaDomainError(f"alpha must lie in (0, 1), got {alpha!r}")
    return alpha


def square_beta(alpha: float) -> float:
    """Per-axis tail probability giving joint coverage ``1 - alpha``."""
    alpha = _open_alpha(alpha)
    # (1 - sqrt(1 - a)) / 2 rewritten to avoid cancellation for small a
    return 0.5 * alpha / (1.0 + math.sqrt(1.0 - alpha))


def confidence_disc(est: EstimateResult, alpha: float) -> ConfidenceDisc:
    alpha = float(alpha)
    if not 0.0 < alpha <= 1.0:
        raise AlphaDomainError(f"alpha must lie in (0, 1], got {alpha!r}")
    radius = _scale(est) * math.sqrt(-math.log(alpha))
    return ConfidenceDisc(center=complex(est.p_n), radius=radius, alpha=alpha)


def confidence_square(est: EstimateResult, alpha: float) -> ConfidenceSquare:
    beta = square_beta(alpha)
    half = _scale(est) / math.sqrt(2.0) * normal_quantile_upper(beta)
    return ConfidenceSquare(center=complex(est.p_n), half_side=half, alpha=float(alpha))


def confidence_intervals(est: EstimateResult, alpha: float) -> ConfidenceIntervals:
    alpha = _open_alpha(alpha)
    half = _scale(est) / math.sqrt(2.0) * normal_quantile_upper(alpha / 2.0)
    p = complex(est.p_n)
    return ConfidenceIntervals(p.real - half, p.real + half, p.imag - half, p.imag + half, alpha)


def build_region(kind: str, est: EstimateResult, alpha: float):
    builders = {
        "disc": confidence_disc,
        "square": confidence_square,
        "intervals": confidence_intervals,
    }
    try:
        return builders[kind](est, alpha)
    except KeyError:
        raise ValueError(f"unknown region kind {kind!r}") from None
