import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cauchydisc.errors import NonFiniteError, SampleTooSmallError, ZeroDatumError
from cauchydisc.estimate import (
    estimate, geometric_mean, geometric_mean_rows, log_variance, median, shifted_estimate,
    upper_median,
)
from cauchydisc.mc import SeedSpec, sample_cauchy
from cauchydisc.oracle import IntegrandSpec, cauchy_expect

samples = st.lists(
    st.floats(min_value=1e-6, max_value=1e6).flatmap(lambda v: st.sampled_from([v, -v])),
    min_size=2, max_size=40)


def test_geometric_mean_examples():
    assert geometric_mean([1, -1]) == pytest.approx(1j, abs=1e-16)
    assert geometric_mean([math.e] * 3) == pytest.approx(math.e, rel=1e-15)
    z = geometric_mean([-1, -1])
    assert abs(z - (-1)) <= 4 * math.ulp(1.0)


def test_geometric_mean_singleton():
    assert geometric_mean([2.5]) == pytest.approx(2.5, rel=1e-15)
    assert geometric_mean([-2.5]) == pytest.approx(-2.5, abs=1e-15)


def test_log_variance_examples():
    assert log_variance([1, -1]) == pytest.approx(math.pi**2 / 2, rel=1e-15)
    assert log_variance([1, -1], "paper") == pytest.approx(3 * math.pi**2 / 4, rel=1e-15)
    assert log_variance([3.3] * 7) == 0.0


def test_estimate_bundles():
    est = estimate([1, -1])
    assert est.p_n == pytest.approx(1j, abs=1e-16)
    assert est.v_n == pytest.approx(math.pi**2 / 2)
    assert est.n == 2 and est.v_formula == "corrected"
    assert estimate([1, -1], "paper").v_formula == "paper"


@pytest.mark.parametrize("bad,exc", [([1.0, 0.0], ZeroDatumError), ([1.0, math.nan], NonFiniteError),
                                     ([math.inf, 2.0], NonFiniteError)])
def test_invalid_samples(bad, exc):
    with pytest.raises(exc):
        geometric_mean(bad)


def test_too_small():
    with pytest.raises(SampleTooSmallError):
        log_variance([2.0])
    with pytest.raises(SampleTooSmallError):
        estimate([2.0])
    with pytest.raises(SampleTooSmallError):
        geometric_mean([])


def test_unknown_formula():
    with pytest.raises(ValueError):
        log_variance([1, 2], "biased")


def test_paper_formula_is_biased_by_order_one_over_n():
    rng = np.random.default_rng(0)
    x = rng.standard_cauchy(50)
    n = x.size
    ell = np.log(np.abs(x)) + 1j * np.where(x < 0, math.pi, 0)
    diff = log_variance(x, "paper") - log_variance(x, "corrected")
    # paper - corrected = |mean|^2 * (n/(n-1) - 1)
    assert diff == pytest.approx(abs(ell.mean()) ** 2 / (n - 1), rel=1e-10)


@given(samples, st.floats(min_value=1e-3, max_value=1e3))
def test_scale_equivariance(xs, c):
    x = np.array(xs)
    assert abs(geometric_mean(c * x) - c * geometric_mean(x)) <= 1e-12 * abs(c * geometric_mean(x))
    v, vc = log_variance(x), log_variance(c * x)
    # logs shift by the rounded constant ln c; allow for that rounding on every term
    assert abs(vc - v) <= 4 * math.ulp(v) + 1e-13 * (1 + v)


@given(samples, st.sampled_from([2.0, 0.5, 8.0]))
def test_scale_equivariance_exact_for_powers_of_two(xs, c):
    x = np.array(xs)
    v = log_variance(x)
    assert abs(log_variance(c * x) - v) <= 4 * math.ulp(v) + 8 * math.ulp(1.0) * math.log(2) * 2


@given(samples)
def test_negation_equivariance(xs):
    x = np.array(xs)
    g = geometric_mean(x)
    assert abs(geometric_mean(-x) - (-g.conjugate())) <= 1e-12 * abs(g)
    assert log_variance(-x) == pytest.approx(log_variance(x), rel=1e-14, abs=1e-300)


@given(samples, st.randoms(use_true_random=False))
def test_permutation_invariance_is_exact(xs, rnd):
    ys = list(xs)
    rnd.shuffle(ys)
    assert geometric_mean(xs) == geometric_mean(ys)
    assert log_variance(xs) == log_variance(ys)
    assert log_variance(xs, "paper") == log_variance(ys, "paper")


@given(samples)
def test_imaginary_part_nonnegative(xs):
    assert geometric_mean(xs).imag >= 0.0
    assert log_variance(xs) >= 0.0


def test_rows_fast_path_agrees():
    x = sample_cauchy(2 + 1j, 300, seed=3).reshape(30, 10)
    rows = geometric_mean_rows(x)
    for r, xi in zip(rows, x):
        assert r == pytest.approx(geometric_mean(xi), rel=1e-13)


def test_consistency_for_gamma_i():
    x = sample_cauchy(1j, 10**4, seed=2024)
    v = math.pi**2 / 2
    # Var of one |l - log gamma|^2 term, from the quadrature oracle
    fourth = cauchy_expect(IntegrandSpec.custom(
        lambda t: np.abs(np.log(np.abs(t)) + 1j * np.where(t < 0, math.pi, 0) - 0.5j * math.pi) ** 4),
        1j, 1e-10).value.real
    errs = []
    for n in (100, 1000, 10000):
        est = estimate(x[:n])
        errs.append(abs(est.p_n - 1j))
        assert abs(est.v_n - v) <= 3 * math.sqrt((fourth - v * v) / n)
    assert errs[0] > errs[1] > errs[2]


def test_median_examples():
    assert median([3, 1, 2]) == 2
    assert median([4, 1, 3, 2]) == 2.5
    assert median([5, 5, 5]) == 5


def test_upper_median_examples():
    assert upper_median([4, 1, 3, 2]) == 3
    assert upper_median([3, 1, 2]) == 2
    assert upper_median([1, 1, 2, 2]) == 2


def test_shifted_estimate_collapse_on_datum():
    x = [0.3, -1.2, 2.5, 7.0]
    for theta in x:
        z = shifted_estimate(x, theta, 0.0)
        assert z == complex(theta, 0.0)
        assert z.imag == 0.0


def test_shifted_estimate_reduces_to_geometric_mean():
    assert shifted_estimate([1, -1], 0.0, 0.0) == geometric_mean([1, -1])
    x = sample_cauchy(1j, 25, seed=1)
    assert shifted_estimate(x, 0.0, 0.0) == geometric_mean(x)


def test_shifted_estimate_equivariant_in_theta_when_eps_zero():
    x = sample_cauchy(3 + 2j, 51, seed=9)
    c = 0.123
    assert shifted_estimate(x, c, 0.0) == pytest.approx(c + geometric_mean(x - c), rel=1e-14)


def test_shifted_estimate_single_factor():
    z = shifted_estimate([1.7], 0.4, 0.25)
    assert z == pytest.approx(1.7, abs=1e-14)


def test_shifted_estimate_rejects_negative_epsilon():
    with pytest.raises(ValueError):
        shifted_estimate([1.0, 2.0], 0.0, -0.1)


@settings(max_examples=50)
@given(samples)
def test_upper_order_stat_shift_always_collapses(xs):
    theta = upper_median(xs)
    z = shifted_estimate(xs, theta, 0.0)
    assert z.imag == 0.0 and z.real == theta


def test_even_median_avoids_collapse_generically():
    x = sample_cauchy(1j, 1000, seed=4)
    m = median(x)
    assert not np.any(x == m)
    assert shifted_estimate(x, m, 0.0).imag > 0.5


def test_epsilon_shift_unbiased():
    reps, n = 10**5, 20
    rng = SeedSpec(77).stream(0)
    x = sample_cauchy(1j, reps * n, rng).reshape(reps, n)
    z = np.array([shifted_estimate(row, 0.3, 0.1) for row in x])
    se_re = z.real.std() / math.sqrt(reps)
    se_im = z.imag.std() / math.sqrt(reps)
    assert abs(z.real.mean()) <= 3 * se_re
    assert abs(z.imag.mean() - 1.0) <= 3 * se_im
