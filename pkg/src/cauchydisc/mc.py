"""Reproducible sampling and the simulation studies.

Every trial draws from its own generator, seeded with
``mix64(master_seed, trial_index)``.  Trials therefore do not depend on
each other or on scheduling, and aggregate results are bit-identical for
any number of worker threads.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .analytic import CauchyParams
from .errors import DomainError, SampleTooSmallError, ZeroDatumError
from .estimate import (
    as_sample, estimate, geometric_mean_rows, median, shifted_estimate, upper_median,
)
from .quantiles import normal_quantile_upper, student_t_quantile_upper
from .regions import ConfidenceDisc, confidence_disc, confidence_intervals, confidence_square

THREADS_ENV = "CAUCHYDISC_THREADS"
COVERAGE_KINDS = ("disc", "square", "mu_interval", "sigma_interval", "intervals")
_MASK64 = (1 << 64) - 1


def mix64(master: int, index: int) -> int:
    """SplitMix64 finaliser applied to ``master + (index + 1) * golden``."""
    z = (int(master) + (int(index) + 1) * 0x9E3779B97F4A7C15) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


@dataclass(frozen=True)
class SeedSpec:
    master_seed: int

    def stream(self, index: int) -> np.random.Generator:
        return np.random.Generator(np.random.PCG64(mix64(self.master_seed, index)))


def _rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    if isinstance(seed, SeedSpec):
        return seed.stream(0)
    return SeedSpec(int(seed)).stream(0)


def _params(gamma) -> CauchyParams:
    return gamma if isinstance(gamma, CauchyParams) else CauchyParams.from_complex(gamma)


def thread_count(threads: int | None = None) -> int:
    if threads is None:
        threads = int(os.environ.get(THREADS_ENV, "1") or 1)
    return max(1, int(threads))


def _open_uniform(rng: np.random.Generator, n: int) -> np.ndarray:
    # (k + 1/2) / 2**53: strictly inside (0, 1) and never exactly 1/2
    return (rng.integers(0, 1 << 53, size=n).astype(float) + 0.5) * 2.0**-53


def sample_cauchy(gamma, n: int, seed) -> np.ndarray:
    """``n`` draws from ``C(gamma)`` by inverting the CDF."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    g = _params(gamma)
    rng = _rng(seed)
    x = g.mu + g.sigma * np.tan(math.pi * (_open_uniform(rng, n) - 0.5))
    zero = x == 0.0
    while np.any(zero):
        k = int(zero.sum())
        x[zero] = g.mu + g.sigma * np.tan(math.pi * (_open_uniform(rng, k) - 0.5))
        zero = x == 0.0
    return x


def sample_gaussian(mu: float, sigma: float, n: int, seed) -> np.ndarray:
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    if not sigma > 0:
        raise DomainError(f"sigma must be > 0, got {sigma!r}")
    rng = _rng(seed)
    x = mu + sigma * rng.standard_normal(n)
    zero = x == 0.0
    while np.any(zero):
        x[zero] = mu + sigma * rng.standard_normal(int(zero.sum()))
        zero = x == 0.0
    return x


def _run_trials(fn, trials: int, threads: int | None) -> list:
    workers = thread_count(threads)
    if workers == 1 or trials < 2:
        return [fn(i) for i in range(trials)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, range(trials), chunksize=max(1, trials // (8 * workers))))


def wilson_interval(hits: int, trials: int, level: float = 0.95) -> tuple[float, float]:
    z = normal_quantile_upper((1.0 - level) / 2.0)
    phat = hits / trials
    z2n = z * z / trials
    centre = (phat + z2n / 2.0) / (1.0 + z2n)
    half = z / (1.0 + z2n) * math.sqrt(phat * (1.0 - phat) / trials + z2n / (4.0 * trials))
    lo = 0.0 if hits == 0 else max(0.0, centre - half)
    hi = 1.0 if hits == trials else min(1.0, centre + half)
    return lo, hi


@dataclass(frozen=True)
class CoverageReport:
    trials: int
    hits: int
    coverage: float
    region_kind: str
    alpha: float
    gamma_true: CauchyParams
    n_per_trial: int
    wilson_ci: tuple[float, float]
    v_formula: str = "corrected"
    seed: int | None = None

    def to_dict(self) -> dict:
        return {
            "trials": self.trials,
            "hits": self.hits,
            "coverage": self.coverage,
            "region_kind": self.region_kind,
            "alpha": self.alpha,
            "gamma_true": {"mu": self.gamma_true.mu, "sigma": self.gamma_true.sigma},
            "n_per_trial": self.n_per_trial,
            "wilson_ci": list(self.wilson_ci),
            "v_formula": self.v_formula,
            "seed": self.seed,
        }


def _covers(kind: str, est, alpha: float, g: CauchyParams) -> bool:
    if kind == "disc":
        return confidence_disc(est, alpha).contains(g.gamma)
    if kind == "square":
        return confidence_square(est, alpha).contains(g.gamma)
    iv = confidence_intervals(est, alpha)
    if kind == "mu_interval":
        return iv.contains_mu(g.mu)
    if kind == "sigma_interval":
        return iv.contains_sigma(g.sigma)
    return iv.contains(g.gamma)


def coverage(gamma, n_per_trial: int, trials: int, alpha: float = 0.05,
             region_kind: str = "disc", v_formula: str = "corrected",
             seed: int = 0, threads: int | None = None) -> CoverageReport:
    """Fraction of simulated samples whose region contains the true gamma.

    ``region_kind`` is one of ``disc``, ``square``, ``mu_interval``,
    ``sigma_interval`` (each nominally ``1 - alpha``) or ``intervals``,
    which asks for both marginal intervals at once.
    """
    g = _params(gamma)
    if trials < 1:
        raise DomainError(f"trials must be >= 1, got {trials}")
    if n_per_trial < 2:
        raise SampleTooSmallError(f"n_per_trial must be >= 2, got {n_per_trial}")
    if region_kind not in COVERAGE_KINDS:
        raise ValueError(f"unknown region kind {region_kind!r}")
    seeds = SeedSpec(int(seed))
    # fail on a bad alpha before spawning any work
    _covers(region_kind, estimate([1.0, -1.0], v_formula), alpha, g)

    def trial(i: int) -> bool:
        x = sample_cauchy(g, n_per_trial, seeds.stream(i))
        return _covers(region_kind, estimate(x, v_formula), alpha, g)

    hits = sum(_run_trials(trial, trials, threads))
    return CoverageReport(
        trials=trials, hits=hits, coverage=hits / trials, region_kind=region_kind,
        alpha=float(alpha), gamma_true=g, n_per_trial=n_per_trial,
        wilson_ci=wilson_interval(hits, trials), v_formula=v_formula, seed=int(seed),
    )


def gm_replicates(gamma, n: int, trials: int, seed: int = 0,
                  threads: int | None = None) -> np.ndarray:
    """Geometric means of ``trials`` independent samples of size ``n``."""
    g = _params(gamma)
    seeds = SeedSpec(int(seed))
    block = 1000

    def run_block(b: int) -> np.ndarray:
        idx = range(b * block, min(trials, (b + 1) * block))
        rows = np.stack([sample_cauchy(g, n, seeds.stream(i)) for i in idx])
        return geometric_mean_rows(rows)

    blocks = _run_trials(run_block, -(-trials // block), threads)
    return np.concatenate(blocks)


@dataclass(frozen=True)
class MedianShiftResult:
    estimate: complex
    disc: ConfidenceDisc
    shift: float
    degenerate: bool
    v_n: float | None = None


def median_shift_pipeline(sample, alpha: float = 0.05, median_kind: str = "paired_average",
                          v_formula: str = "corrected") -> MedianShiftResult:
    """Estimate on ``x - m`` and translate back by ``m``.

    If ``m`` coincides with a datum the geometric mean of the shifted data
    collapses to zero; the result is then ``m + 0i`` with a zero-radius disc
    and ``degenerate=True``.
    """
    x = as_sample(sample, min_size=2)
    if median_kind == "paired_average":
        m = median(x)
    elif median_kind == "upper_order_stat":
        m = upper_median(x)
    else:
        raise ValueError(f"unknown median kind {median_kind!r}")
    y = x - m
    if np.any(y == 0.0):
        return MedianShiftResult(complex(m, 0.0), ConfidenceDisc(complex(m, 0.0), 0.0, float(alpha)),
                                 m, True)
    est = estimate(y, v_formula)
    disc = confidence_disc(est, alpha).translated(m)
    return MedianShiftResult(est.p_n + m, disc, m, False, est.v_n)


@dataclass(frozen=True)
class OutlierTableRow:
    sample_index: int
    center: float
    radius: float
    interval: tuple[float, float]
    variant: str  # "t_based" | "gm_based"
    contaminated: bool


def _t_row(i: int, x: np.ndarray, alpha: float, contaminated: bool) -> OutlierTableRow:
    n = x.size
    centre = float(np.mean(x))
    radius = student_t_quantile_upper(alpha / 2.0, n - 1) * float(np.std(x, ddof=1)) / math.sqrt(n)
    return OutlierTableRow(i, centre, radius, (centre - radius, centre + radius), "t_based", contaminated)


def _gm_row(i: int, x: np.ndarray, alpha: float, contaminated: bool) -> OutlierTableRow:
    iv = confidence_intervals(estimate(x), alpha)
    centre = 0.5 * (iv.mu_lo + iv.mu_hi)
    return OutlierTableRow(i, centre, iv.half_width, (iv.mu_lo, iv.mu_hi), "gm_based", contaminated)


def outlier_experiment(n_samples: int = 10, n_per_sample: int = 100, outlier_value: float = 5.0,
                       alpha: float = 0.05, seed: int = 0) -> list[OutlierTableRow]:
    """Gaussian samples with the last datum replaced by ``outlier_value``.

    For each sample, four rows are produced in the order
    (t, clean), (t, contaminated), (gm, clean), (gm, contaminated).
    """
    if n_samples < 1:
        raise DomainError(f"n_samples must be >= 1, got {n_samples}")
    if n_per_sample < 2:
        raise SampleTooSmallError(f"n_per_sample must be >= 2, got {n_per_sample}")
    if outlier_value == 0.0:
        raise ZeroDatumError("outlier value 0 has no logarithm")
    seeds = SeedSpec(int(seed))
    rows = []
    for i in range(1, n_samples + 1):
        clean = sample_gaussian(0.0, 1.0, n_per_sample, seeds.stream(i - 1))
        dirty = clean.copy()
        dirty[-1] = outlier_value
        rows += [_t_row(i, clean, alpha, False), _t_row(i, dirty, alpha, True),
                 _gm_row(i, clean, alpha, False), _gm_row(i, dirty, alpha, True)]
    return rows


@dataclass(frozen=True)
class EpsilonShiftRow:
    n: int
    sup_deviation: float
    theta_at_sup: float


def epsilon_shift_study(gamma, theta_interval: tuple[float, float], epsilon: float,
                        n_grid: int, n_list: Sequence[int], seed: int = 0,
                        thetas: Sequence[float] | None = None) -> list[EpsilonShiftRow]:
    """Largest ``|shifted_estimate - gamma|`` over a theta grid, per sample size.

    The sizes in ``n_list`` are nested prefixes of one long sample, so the
    rows trace a single trajectory as ``N`` grows.  ``thetas`` replaces the
    uniform grid when given.
    """
    g = _params(gamma)
    if thetas is None:
        if n_grid < 2:
            raise DomainError("n_grid must be >= 2")
        lo, hi = theta_interval
        grid = np.linspace(float(lo), float(hi), int(n_grid))
    else:
        grid = np.asarray(thetas, dtype=float)
    x = sample_cauchy(g, max(n_list), SeedSpec(int(seed)).stream(0))
    rows = []
    for n in n_list:
        dev = [abs(shifted_estimate(x[:n], th, epsilon) - g.gamma) for th in grid]
        k = int(np.argmax(dev))
        rows.append(EpsilonShiftRow(int(n), float(dev[k]), float(grid[k])))
    return rows
