"""Normal and Student-t distribution functions and upper quantiles."""
from __future__ import annotations

import math

from .errors import NoConvergenceError, QuantileDomainError

SQRT2 = math.sqrt(2.0)
SQRT2PI = math.sqrt(2.0 * math.pi)

# Acklam's rational approximation to the inverse normal CDF (rel. err ~1e-9)
_A = (-3.969683028665376e01, 2.209460984245205e02, -2.759285104469687e02,
      1.383577518672690e02, -3.066479806614716e01, 2.506628277459239e00)
_B = (-5.447609879822406e01, 1.615858368580409e02, -1.556989798598866e02,
      6.680131188771972e01, -1.328068155288572e01)
_C = (-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e00,
      -2.549732539343734e00, 4.374664141464968e00, 2.938163982698783e00)
_D = (7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e00,
      3.754408661907416e00)
_P_LOW = 0.02425


def _check_alpha(alpha: float) -> float:
    alpha = float(alpha)
    if not 0.0 < alpha < 1.0:
        raise QuantileDomainError(f"alpha must lie in (0, 1), got {alpha!r}")
    return alpha


def normal_cdf(x: float) -> float:
    return 0.5 * math.erfc(-x / SQRT2)


def _acklam_lower(p: float) -> float:
    if p < _P_LOW:
        q = math.sqrt(-2.0 * math.log(p))
        c, d = _C, _D
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) / \
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0)
    q = p - 0.5
    r = q * q
    a, b = _A, _B
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q / \
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0)


def _normal_ppf_lower(p: float) -> float:
    """Inverse CDF for ``p <= 0.5``, polished by two Halley steps."""
    x = _acklam_lower(p)
    for _ in range(2):
        e = normal_cdf(x) - p
        u = e * SQRT2PI * math.exp(0.5 * x * x)
        x -= u / (1.0 + 0.5 * x * u)
    return x


def normal_quantile_upper(alpha: float) -> float:
    """``rho`` with ``Phi(rho) = 1 - alpha``."""
    alpha = _check_alpha(alpha)
    if alpha == 0.5:
        return 0.0
    if alpha < 0.5:
        return -_normal_ppf_lower(alpha)
    return _normal_ppf_lower(1.0 - alpha)


def _betacf(a: float, b: float, x: float) -> float:
    # modified Lentz evaluation of the incomplete beta continued fraction
    tiny = 1e-300
    qab, qap, qam = a + b, a + 1.0, a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < tiny:
        d = tiny
    d = 1.0 / d
    h = d
    for m in range(1, 10_000):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        d = tiny if abs(d) < tiny else d
        c = 1.0 + aa / c
        c = tiny if abs(c) < tiny else c
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        d = tiny if abs(d) < tiny else d
        c = 1.0 + aa / c
        c = tiny if abs(c) < tiny else c
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < 1e-16:
            return h
    raise NoConvergenceError("incomplete beta continued fraction did not converge")


def betainc_reg(a: float, b: float, x: float, y: float | None = None) -> float:
    """Regularised incomplete beta ``I_x(a, b)``.

    ``y`` is ``1 - x``; pass it when it is known more accurately than the
    subtraction would give.
    """
    if y is None:
        y = 1.0 - x
    if x <= 0.0:
        return 0.0
    if y <= 0.0:
        return 1.0
    lbeta = math.lgamma(a) + math.lgamma(b) - math.lgamma(a + b)
    front = math.exp(a * math.log(x) + b * math.log(y) - lbeta)
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _betacf(a, b, x) / a
    return 1.0 - front * _betacf(b, a, y) / b


def student_t_sf(t: float, df: float) -> float:
    """Upper tail ``P(T > t)`` of Student's t."""
    if t < 0.0:
        return 1.0 - student_t_sf(-t, df)
    t2 = t * t
    denom = df + t2
    # x = df/(df+t^2), 1-x = t^2/(df+t^2), both without cancellation
    return 0.5 * betainc_reg(0.5 * df, 0.5, df / denom, t2 / denom)


def student_t_cdf(t: float, df: float) -> float:
    if t > 0.0:
        return 1.0 - student_t_sf(t, df)
    return student_t_sf(-t, df)


def student_t_quantile_upper(alpha: float, df: float) -> float:
    """``t`` with ``P(T > t) = alpha``, found by bisection on the tail."""
    alpha = _check_alpha(alpha)
    df = float(df)
    if not df > 0.0:
        raise QuantileDomainError(f"degrees of freedom must be > 0, got {df!r}")
    if alpha == 0.5:
        return 0.0
    if alpha > 0.5:
        return -student_t_quantile_upper(1.0 - alpha, df)
    lo, hi = 0.0, 1.0
    while student_t_sf(hi, df) > alpha:
        lo, hi = hi, 2.0 * hi
        if hi > 1e300:
            raise NoConvergenceError("could not bracket t quantile")
    for _ in range(2000):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if student_t_sf(mid, df) > alpha:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 2e-16 * hi:
            break
    return 0.5 * (lo + hi)
