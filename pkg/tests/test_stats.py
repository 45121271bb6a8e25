import math

import numpy as np
import pytest

from kpzlab import stats
from kpzlab.errors import (DegenerateSampleError, InsufficientDataError,
                           ParameterError)


def test_binomial_pmf_values():
    assert stats.binomial_pmf(2, 1) == 0.5
    assert stats.binomial_pmf(4, 2) == 0.375
    with pytest.raises(ParameterError):
        stats.binomial_pmf(4, 5)


def test_binomial_pmf_normalization():
    total = math.fsum(stats.binomial_pmf(1000, k) for k in range(1001))
    assert abs(total - 1.0) <= 1e-12


def test_binomial_cdf_grid_matches_pmf():
    cdf = stats.binomial_cdf_grid(20)
    direct = np.cumsum([stats.binomial_pmf(20, k) for k in range(21)])
    assert np.allclose(cdf, direct, atol=1e-15)


def test_stirling_small_n():
    approx, rel = stats.stirling_approx(1)
    assert abs(approx - math.exp(-1) * math.sqrt(2 * math.pi)) < 1e-12
    assert abs(abs(rel) - 0.0778) < 1e-3          # ~7.8% at n=1
    _, rel10 = stats.stirling_approx(10)
    assert abs(abs(rel10) - 0.0083) < 2e-4        # ~0.83% at n=10


def test_stirling_error_decreasing():
    errors = [abs(stats.stirling_approx(n)[1]) for n in range(1, 21)]
    assert all(a > b for a, b in zip(errors, errors[1:]))
    with pytest.raises(ParameterError):
        stats.stirling_approx(0)


def test_gaussian_cdf_symmetry():
    assert stats.gaussian_cdf(0.0) == 0.5
    for x in (0.3, 1.7, 4.2):
        assert abs(stats.gaussian_cdf(x) + stats.gaussian_cdf(-x) - 1.0) < 1e-12


def test_clt_small_case():
    # sup error shrinks like N^-1/2; at N=400 it is already ~2%
    assert stats.clt_binomial_sup_error(400) < 0.05


def test_estimate_exponent_exact_power_law():
    pts = [stats.ScalePoint(s, s ** (1.0 / 3.0), 100) for s in (10.0, 100.0, 1000.0)]
    slope, _, resid = stats.estimate_exponent(pts)
    assert abs(slope - 1.0 / 3.0) < 1e-12
    assert resid < 1e-12


def test_estimate_exponent_constant():
    pts = [stats.ScalePoint(s, 2.5, 100) for s in (10.0, 100.0, 1000.0)]
    slope, _, _ = stats.estimate_exponent(pts)
    assert abs(slope) < 1e-12


def test_estimate_exponent_affine_equivariance():
    pts = [stats.ScalePoint(s, s ** 0.5 * (1 + 0.01 * i), 100)
           for i, s in enumerate((10.0, 40.0, 160.0, 640.0))]
    scaled = [stats.ScalePoint(p.scale, 7.0 * p.dispersion, p.count) for p in pts]
    assert abs(stats.estimate_exponent(pts)[0]
               - stats.estimate_exponent(scaled)[0]) < 1e-12


def test_estimate_exponent_count_filter_and_errors():
    pts = [stats.ScalePoint(10.0, 1.0, 10), stats.ScalePoint(100.0, 2.0, 10),
           stats.ScalePoint(1000.0, 3.0, 10)]
    with pytest.raises(InsufficientDataError):
        stats.estimate_exponent(pts)              # all below the count floor
    with pytest.raises(InsufficientDataError):
        stats.estimate_exponent(pts[:2])


def test_ks_distance_single_point():
    assert stats.ks_distance([0.5], lambda x: np.clip(x, 0, 1)) == 0.5


def test_ks_distance_null():
    rng = np.random.default_rng(5)
    x = rng.random(10_000)
    d = stats.ks_distance(x, lambda v: np.clip(v, 0, 1))
    assert d <= 1.63 / math.sqrt(10_000)


def test_ks_invariance_under_monotone_transform():
    rng = np.random.default_rng(6)
    x = rng.random(2000)
    d1 = stats.ks_distance(x, lambda v: np.clip(v, 0, 1))
    d2 = stats.ks_distance(np.log(x), lambda v: np.clip(np.exp(v), 0, 1))
    assert abs(d1 - d2) < 1e-12


def test_standardize():
    out = stats.standardize([0.0, 2.0])
    assert np.allclose(out, [-1.0, 1.0])
    twice = stats.standardize(out)
    assert np.max(np.abs(twice - out)) < 1e-12
    with pytest.raises(DegenerateSampleError):
        stats.standardize([3.0, 3.0, 3.0])


def test_skewness_affine_invariant():
    rng = np.random.default_rng(7)
    x = rng.exponential(size=5000)
    assert abs(stats.skewness(x) - stats.skewness(stats.standardize(x))) < 1e-10


def test_spatial_correlation_contract():
    rng = np.random.default_rng(8)
    profiles = rng.normal(size=(500, 12))
    assert stats.spatial_correlation(profiles, 0) == 1.0
    assert abs(stats.spatial_correlation(profiles, 3)) < 0.05
    with pytest.raises(InsufficientDataError):
        stats.spatial_correlation(profiles[:50], 1)


def test_empirical_sample_container():
    s = stats.EmpiricalSample(np.arange(5.0), model="demo")
    assert stats.ks_distance(s, lambda v: np.clip(v / 4.0, 0, 1)) >= 0.0
    with pytest.raises(InsufficientDataError):
        stats.EmpiricalSample(np.array([]))
